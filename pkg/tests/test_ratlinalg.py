from fractions import Fraction

import numpy as np
import pytest

from ifsfourier.ratlinalg import (
    AmbiguousExpansivityError,
    SingularMatrixError,
    identity_rational,
    is_expansive,
    mat_inverse,
    mat_pow,
    rational_matrix,
    rational_vector,
    solve_exact,
)


def test_is_expansive_scale4():
    assert is_expansive([[4]]) is True


def test_is_expansive_identity_is_ambiguous():
    with pytest.raises(AmbiguousExpansivityError):
        is_expansive(np.eye(2))


def test_is_expansive_strict_contraction():
    assert is_expansive([[0.5, 0], [0, 0.25]]) is False


def test_is_expansive_rotation_scale_sqrt2():
    # eigenvalues 1 +- i, modulus sqrt(2)
    assert is_expansive([[1, 1], [-1, 1]]) is True


def test_is_expansive_matches_transpose():
    rng = np.random.default_rng(7)
    for _ in range(20):
        m = rng.integers(-3, 4, size=(3, 3)).astype(float) + 2.5 * np.eye(3)
        try:
            a = is_expansive(m)
            b = is_expansive(m.T)
        except AmbiguousExpansivityError:
            continue
        assert a == b


def test_is_expansive_rejects_nonsquare():
    with pytest.raises(ValueError):
        is_expansive(np.ones((2, 3)))


def test_mat_pow_hand_square():
    m = rational_matrix([[2, 1], [0, 2]])
    sq = mat_pow(m, 2)
    assert sq.tolist() == rational_matrix([[4, 4], [0, 4]]).tolist()


def test_mat_pow_identity_exponent():
    m = rational_matrix([[3, 1], [1, 2]])
    assert mat_pow(m, 1).tolist() == m.tolist()


def test_mat_pow_scalar_cube():
    assert mat_pow(rational_matrix([[4]]), 3)[0, 0] == 64


def test_mat_pow_additivity():
    m = rational_matrix([[2, 1], [-1, 3]])
    for a in (1, 2, 3):
        for b in (1, 2, 4):
            lhs = mat_pow(m, a + b)
            rhs = mat_pow(m, a) @ mat_pow(m, b)
            assert lhs.tolist() == rhs.tolist()


def test_solve_exact_scalar():
    x = solve_exact(rational_matrix([[3]]), rational_vector([3]))
    assert x[0] == 1


def test_solve_exact_identity():
    v = rational_vector([Fraction(2, 7), Fraction(-5, 3)])
    x = solve_exact(identity_rational(2), v)
    assert list(x) == list(v)


def test_solve_exact_2x2():
    m = rational_matrix([[1, 1], [-1, 1]])
    x = solve_exact(m, rational_vector([1, 0]))
    # oracle: x1 + x2 = 1, -x1 + x2 = 0
    assert list(x) == [Fraction(1, 2), Fraction(1, 2)]


def test_solve_exact_roundtrip_random():
    rng = np.random.default_rng(11)
    for _ in range(30):
        d = int(rng.integers(1, 5))
        # diagonally dominant, hence invertible
        m = rational_matrix(rng.integers(-9, 10, size=(d, d))) + 40 * identity_rational(d)
        x = rational_vector(
            [Fraction(int(rng.integers(-50, 50)), int(rng.integers(1, 20))) for _ in range(d)]
        )
        v = m @ x
        got = solve_exact(m, v)
        assert list(got) == list(x)


def test_solve_exact_singular():
    with pytest.raises(SingularMatrixError):
        solve_exact(rational_matrix([[1, 2], [2, 4]]), rational_vector([1, 1]))


def test_mat_inverse_roundtrip():
    m = rational_matrix([[2, 1], [0, 2]])
    inv = mat_inverse(m)
    assert (m @ inv).tolist() == identity_rational(2).tolist()
