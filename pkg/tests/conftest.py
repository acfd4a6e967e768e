import pytest

from ifsfourier import get_system, find_w_cycles, weight_from_digits


@pytest.fixture(scope="session")
def cantor4():
    return get_system("cantor4")


@pytest.fixture(scope="session")
def cantor3():
    return get_system("cantor3")


@pytest.fixture(scope="session")
def planar_shear():
    return get_system("planar-shear")


@pytest.fixture(scope="session")
def twindragon():
    return get_system("twindragon")


@pytest.fixture(scope="session")
def cantor4_w_cycles(cantor4):
    return find_w_cycles(cantor4, 6)


@pytest.fixture(scope="session")
def cantor4_weight(cantor4):
    return weight_from_digits(cantor4.B)
