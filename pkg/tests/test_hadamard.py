import numpy as np
import pytest

from ifsfourier import AffineSystem, check_duality, check_pair, tensor
from ifsfourier.hadamard import build_matrix

F2 = np.array([[1, 1], [1, -1]]) / np.sqrt(2)


def test_pair_scale4_passes():
    # R^{-1}B = {0, 1/2} against L = {0, 1} gives the 2x2 Fourier matrix
    rep = check_pair([[0], [0.5]], [[0], [1]], 1e-12)
    assert rep.passes
    assert rep.max_deviation < 1e-12
    u = build_matrix([[0], [0.5]], [[0], [1]])
    assert np.allclose(u, F2)


def test_pair_singleton():
    rep = check_pair([[0]], [[0]])
    assert rep.passes and rep.order == 1


def test_pair_quarter_shift_fails():
    # U = (1/sqrt2)[[1,1],[1,i]]: off-diagonal of U*U has modulus |1+i|/2
    rep = check_pair([[0], [0.25]], [[0], [1]])
    assert not rep.passes
    assert rep.max_deviation == pytest.approx(abs(1 + 1j) / 2, abs=1e-12)


def test_pair_swap_preserves_verdict():
    rng = np.random.default_rng(3)
    for _ in range(10):
        a = rng.uniform(-1, 1, size=(3, 2))
        b = rng.uniform(-1, 1, size=(3, 2))
        assert check_pair(a, b).passes == check_pair(b, a).passes
    assert check_pair([[0], [1]], [[0], [0.5]]).passes  # swapped scale-4 pair


def test_duality_cantor4(cantor4):
    rep = check_duality(cantor4)
    assert rep.passes
    assert rep.unitarity.max_deviation < 1e-12
    assert rep.integrality_mode == "structural"


def test_duality_planar_shear(planar_shear):
    rep = check_duality(planar_shear)
    assert rep.passes
    # the underlying matrix is the 4x4 family member at u = i, up to
    # row/column order: all entries have modulus 1/2 and include +-i/2
    u = build_matrix(planar_shear.B @ np.linalg.inv(planar_shear.R).T, planar_shear.L)
    assert np.allclose(np.abs(u), 0.5, atol=1e-12)
    assert np.isclose(np.abs(u.imag), 0.5, atol=1e-12).any()


def test_duality_twindragon(twindragon):
    rep = check_duality(twindragon)
    assert rep.passes
    u = build_matrix(twindragon.B @ np.linalg.inv(twindragon.R).T, twindragon.L)
    assert np.allclose(u, F2, atol=1e-12)


def test_duality_failure_names_check(planar_shear):
    # digit (2,1) makes two matrix rows coincide, so U*U != I
    bad = AffineSystem.create(
        planar_shear.R, [(0, 0), (1, 0), (0, 1), (2, 1)], planar_shear.L
    )
    rep = check_duality(bad)
    assert not rep.passes
    assert "unitarity" in rep.failures


def test_duality_cantor3_fails(cantor3):
    rep = check_duality(cantor3)
    assert not rep.passes
    assert rep.failures == ("unitarity",)


def test_numeric_integrality_path():
    # genuinely non-integer digits, still a Hadamard pair: B scaled by 1/4
    sys = AffineSystem.create([[4]], [[0], [0.5]], [[0], [4]])
    rep = check_duality(sys, integrality_horizon=12)
    assert rep.integrality_mode == "numeric"
    assert rep.integrality_horizon == 12
    assert rep.passes


def test_tensor_two_fourier_matrices():
    got = tensor(F2, F2)
    expected_rows = {
        (1, 1, 1, 1),
        (1, 1, -1, -1),
        (1, -1, 1, -1),
        (1, -1, -1, 1),
    }
    rows = {tuple(int(round(v * 2)) for v in row.real) for row in got}
    assert rows == expected_rows
    assert np.allclose(got.conj().T @ got, np.eye(4), atol=1e-12)


def test_tensor_identity_factor():
    u = np.array([[1j]])
    assert np.allclose(tensor(F2, u), 1j * F2)


def test_tensor_of_unitaries_is_unitary():
    rng = np.random.default_rng(5)
    for _ in range(5):
        theta, phi = rng.uniform(0, 2 * np.pi, 2)
        u = np.array(
            [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]]
        ) * np.exp(1j * phi)
        v = F2 * np.exp(1j * rng.uniform(0, 2 * np.pi))
        w = tensor(u, v)
        assert np.allclose(w.conj().T @ w, np.eye(4), atol=1e-12)


def test_mismatched_cardinalities():
    with pytest.raises(ValueError):
        check_pair([[0], [1]], [[0], [1], [2]])
