"""Exact rational linear algebra for small matrices (d <= 4 in practice).

Matrices and vectors on the exact path are numpy object arrays whose
entries are ``fractions.Fraction``.  That keeps the code close to the
float path (same indexing, same ``@``) while every operation stays exact;
denominators grow like |det S|^p during cycle searches, which arbitrary
precision absorbs.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

__all__ = [
    "SingularMatrixError",
    "AmbiguousExpansivityError",
    "rational_vector",
    "rational_matrix",
    "identity_rational",
    "to_float",
    "mat_pow",
    "mat_inverse",
    "solve_exact",
    "spectral_margin",
    "is_expansive",
]


class SingularMatrixError(ValueError):
    """Raised when an exact solve meets a non-invertible matrix."""


class AmbiguousExpansivityError(ValueError):
    """Raised when an eigenvalue modulus sits inside the safety margin around 1."""


def as_fraction(e) -> Fraction:
    """Fraction with plain Python int internals (numpy scalars normalized;
    a numpy int fed straight to Fraction would keep int64 internals and
    overflow once cycle denominators grow)."""
    if isinstance(e, np.integer):
        return Fraction(int(e))
    if isinstance(e, np.floating):
        return Fraction(float(e))
    return Fraction(e)


def rational_vector(entries) -> np.ndarray:
    """Build a 1-d object array of Fractions."""
    return np.array([as_fraction(e) for e in entries], dtype=object)


def rational_matrix(rows) -> np.ndarray:
    """Build a square object array of Fractions from nested rows."""
    m = np.array([[as_fraction(e) for e in row] for row in rows], dtype=object)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix, got shape %s" % (m.shape,))
    return m


def identity_rational(d: int) -> np.ndarray:
    return np.array(
        [[Fraction(1) if i == j else Fraction(0) for j in range(d)] for i in range(d)],
        dtype=object,
    )


def to_float(a: np.ndarray) -> np.ndarray:
    """Float view of an exact array (or pass floats through)."""
    return np.asarray(a, dtype=float)


def mat_pow(m: np.ndarray, p: int) -> np.ndarray:
    """Exact p-th power, p >= 1, by repeated squaring."""
    if p < 1:
        raise ValueError("exponent must be a positive integer")
    result = None
    base = m
    while p:
        if p & 1:
            result = base if result is None else result @ base
        p >>= 1
        if p:
            base = base @ base
    return result


def solve_exact(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Solve m x = v exactly over the rationals.

    Gaussian elimination with partial (first nonzero) pivoting; raises
    SingularMatrixError when no pivot can be found.  For the cycle-point
    systems (S^p - I) x = ... this never happens: an expansive S has no
    eigenvalue on the unit circle, so S^p - I is invertible.
    """
    n = m.shape[0]
    if m.shape != (n, n) or v.shape != (n,):
        raise ValueError("shape mismatch: %s vs %s" % (m.shape, v.shape))
    a = m.astype(object).copy()
    b = v.astype(object).copy()
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r, col] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError("matrix is not invertible over the rationals")
        if pivot_row != col:
            a[[col, pivot_row]] = a[[pivot_row, col]]
            b[[col, pivot_row]] = b[[pivot_row, col]]
        piv = a[col, col]
        for r in range(col + 1, n):
            if a[r, col] != 0:
                factor = a[r, col] / piv
                a[r, col:] = a[r, col:] - factor * a[col, col:]
                b[r] = b[r] - factor * b[col]
    x = np.zeros(n, dtype=object)
    for r in range(n - 1, -1, -1):
        s = b[r] - (a[r, r + 1 :] * x[r + 1 :]).sum() if r + 1 < n else b[r]
        x[r] = Fraction(s) / a[r, r]
    return x


def mat_inverse(m: np.ndarray) -> np.ndarray:
    """Exact inverse, column by column via solve_exact."""
    n = m.shape[0]
    cols = [solve_exact(m, identity_rational(n)[:, j]) for j in range(n)]
    return np.stack(cols, axis=1)


def spectral_margin(r) -> float:
    """min |eigenvalue| - 1, computed in floating point."""
    ev = np.linalg.eigvals(to_float(r))
    return float(np.min(np.abs(ev))) - 1.0


def is_expansive(r, margin: float = 1e-9) -> bool:
    """True iff every eigenvalue modulus exceeds 1.

    Moduli within `margin` of 1 are rejected as ambiguous rather than
    classified: expansivity is a strict inequality and the float
    eigensolver cannot certify a boundary case.
    """
    r = to_float(r)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise ValueError("expected a square matrix, got shape %s" % (r.shape,))
    moduli = np.abs(np.linalg.eigvals(r))
    if np.any(np.abs(moduli - 1.0) < margin):
        raise AmbiguousExpansivityError(
            "eigenvalue modulus within %g of 1; cannot classify" % margin
        )
    return bool(np.all(moduli > 1.0))
