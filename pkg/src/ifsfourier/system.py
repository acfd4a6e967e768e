"""Affine Hadamard-duality systems (B, L, R) and their two IFS views.

The triple carries an expansive d x d matrix R, its transpose S = R^t,
and two digit sets B, L of common size N.  The B-side IFS is
tau_b(x) = R^{-1}(x + b); the L-side is tau_l(x) = S^{-1}(x + l).
Everything downstream (weights, cycles, spectra, path measures) is
phrased against one of the two views.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .ratlinalg import as_fraction, is_expansive, mat_inverse, rational_matrix, to_float

__all__ = ["IfsView", "AffineSystem", "fvec", "frac_str"]


def fvec(entries) -> tuple:
    """Exact vector as a hashable tuple of Fractions."""
    return tuple(as_fraction(e) for e in entries)


def frac_str(v) -> str:
    """Render an exact scalar or vector as fraction strings."""
    if isinstance(v, (tuple, list, np.ndarray)):
        return "(" + ", ".join(frac_str(c) for c in v) + ")"
    f = as_fraction(v)
    return str(f.numerator) if f.denominator == 1 else "%d/%d" % (f.numerator, f.denominator)


@dataclass(frozen=True, eq=False)
class IfsView:
    """One of the two IFSs of a duality system: x -> matrix^{-1}(x + digit).

    `matrix` is R for the B-system and S for the L-system.  The exact
    (Fraction) mirrors are present whenever the system was built from
    rational data, which is the case for every registry example.
    """

    label: str
    matrix: np.ndarray
    digits: np.ndarray  # shape (N, d), float
    matrix_exact: np.ndarray | None = None
    digits_exact: tuple | None = None  # tuple of fvec

    @property
    def d(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_digits(self) -> int:
        return len(self.digits)

    @property
    def inv(self) -> np.ndarray:
        return np.linalg.inv(self.matrix)

    @property
    def inv_exact(self) -> np.ndarray | None:
        if self.matrix_exact is None:
            return None
        return mat_inverse(self.matrix_exact)

    @property
    def contraction_factor(self) -> float:
        """Operator 2-norm of matrix^{-1}; < 1 for all systems we target."""
        return float(np.linalg.norm(self.inv, 2))

    @property
    def contraction_factor_inf(self) -> float:
        """Operator inf-norm of matrix^{-1} (row-sum norm); < 1 makes the
        axis-aligned bounding box forward-invariant, which grid transfer
        iteration relies on."""
        return float(np.linalg.norm(self.inv, np.inf))

    def tau(self, digit_index: int, x):
        """Apply one inverse branch.  Exact when x is Fraction data and the
        exact mirrors exist, float otherwise."""
        coords = [x] if isinstance(x, (int, float, Fraction)) else list(x)
        if self.digits_exact is not None and all(
            isinstance(c, (int, Fraction)) for c in coords
        ):
            xe = np.array(fvec(coords), dtype=object)
            de = np.array(self.digits_exact[digit_index], dtype=object)
            return tuple(self.inv_exact @ (xe + de))
        xf = np.asarray(coords, dtype=float)
        return self.inv @ (xf + self.digits[digit_index])

    def tau_all(self, points: np.ndarray) -> np.ndarray:
        """All branch images of a batch: shape (N, n_points, d)."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        out = np.empty((self.n_digits, pts.shape[0], self.d))
        inv_t = self.inv.T
        for i in range(self.n_digits):
            out[i] = (pts + self.digits[i]) @ inv_t
        return out

    def bounding_radius(self) -> float:
        """Radius a with tau_i(ball(0, a)) inside ball(0, a) for all i:
        a > c * M / (1 - c) with c = ||matrix^{-1}|| and M = max |digit|."""
        c = self.contraction_factor
        if c >= 1.0:
            raise ValueError("matrix inverse is not a 2-norm contraction")
        m = float(np.max(np.linalg.norm(self.digits, axis=1))) if len(self.digits) else 0.0
        return c * m / (1.0 - c)

    def box(self, inflate: float = 1.05) -> tuple[np.ndarray, np.ndarray]:
        """Axis-aligned box for grid work, inflated to absorb interpolation
        stencils.  Prefers the inf-norm radius (box-invariant) when the
        inverse contracts in that norm, else falls back to the 2-norm ball
        radius (box invariance then not guaranteed; grid ops will check)."""
        c = self.contraction_factor_inf
        if c < 1.0:
            m = float(np.max(np.abs(self.digits))) if len(self.digits) else 0.0
            r = c * m / (1.0 - c)
        else:
            r = self.bounding_radius()
        r = r * inflate if r > 0 else 1e-3
        lo = -r * np.ones(self.d)
        hi = r * np.ones(self.d)
        return lo, hi


@dataclass(frozen=True, eq=False)
class AffineSystem:
    """The duality triple (B, L, R) with derived S = R^t and tolerances."""

    d: int
    R: np.ndarray
    S: np.ndarray
    B: np.ndarray  # (N, d) float
    L: np.ndarray  # (N, d) float
    N: int
    R_exact: np.ndarray | None = None
    B_exact: tuple | None = None
    L_exact: tuple | None = None
    unitarity_tol: float = 1e-12
    tail_tol: float = 1e-10
    cycle_tol: float = 1e-9
    name: str = ""
    exact_integer: bool = field(default=False)

    @staticmethod
    def create(R, B, L, *, unitarity_tol=1e-12, tail_tol=1e-10, cycle_tol=1e-9, name=""):
        """Validate and build a system; accepts int/Fraction/float data."""
        Rf = np.atleast_2d(np.asarray(R, dtype=float))
        d = Rf.shape[0]
        if Rf.shape != (d, d):
            raise ValueError("R must be square, got shape %s" % (Rf.shape,))
        Bf = _digit_array(B, d, "B")
        Lf = _digit_array(L, d, "L")
        if len(Bf) != len(Lf):
            raise ValueError("digit sets must have equal cardinality: #B=%d, #L=%d"
                             % (len(Bf), len(Lf)))
        if len(Bf) < 1:
            raise ValueError("digit sets must be nonempty")
        if not is_expansive(Rf):
            raise ValueError("R is not expansive (an eigenvalue modulus is <= 1)")
        exact = _try_exact(R, B, L, d)
        if exact is not None:
            R_exact, B_exact, L_exact = exact
            # exact and float views must agree
            if np.max(np.abs(to_float(R_exact) - Rf)) > 1e-12:
                raise ValueError("exact and float views of R disagree")
            all_int = all(
                f.denominator == 1
                for f in list(R_exact.ravel())
                + [c for v in B_exact for c in v]
                + [c for v in L_exact for c in v]
            )
        else:
            R_exact = B_exact = L_exact = None
            all_int = False
        return AffineSystem(
            d=d, R=Rf, S=Rf.T.copy(), B=Bf, L=Lf, N=len(Bf),
            R_exact=R_exact, B_exact=B_exact, L_exact=L_exact,
            unitarity_tol=unitarity_tol, tail_tol=tail_tol, cycle_tol=cycle_tol,
            name=name, exact_integer=all_int,
        )

    @property
    def S_exact(self) -> np.ndarray | None:
        return None if self.R_exact is None else self.R_exact.T.copy()

    @property
    def has_exact(self) -> bool:
        return self.R_exact is not None

    @property
    def b_view(self) -> IfsView:
        return IfsView("B", self.R, self.B, self.R_exact, self.B_exact)

    @property
    def l_view(self) -> IfsView:
        return IfsView("L", self.S, self.L, self.S_exact, self.L_exact)

    def zero_in_digits(self) -> bool:
        return any(all(c == 0 for c in v) for v in self.B_exact or ()) and any(
            all(c == 0 for c in v) for v in self.L_exact or ()
        )


def _digit_array(digits, d, field_name) -> np.ndarray:
    arr = np.asarray([np.atleast_1d(np.asarray(v, dtype=float)) for v in digits], dtype=float)
    if arr.ndim != 2 or arr.shape[1] != d:
        raise ValueError("%s digits must be vectors of dimension %d" % (field_name, d))
    return arr


def _try_exact(R, B, L, d):
    try:
        R_exact = rational_matrix(np.atleast_2d(np.asarray(R, dtype=object)))
        B_exact = tuple(fvec(np.atleast_1d(v)) for v in B)
        L_exact = tuple(fvec(np.atleast_1d(v)) for v in L)
    except (TypeError, ValueError):
        return None
    return R_exact, B_exact, L_exact
