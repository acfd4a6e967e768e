"""The invariant measure mu_B of IFS(B): sampling, symbols, Fourier transform.

m_B(x) = N^{-1/2} sum_b exp(2 pi i b.x) is the exponential symbol of the
digit set; W_B = |m_B|^2 / N is the transfer weight.  The Fourier
transform of mu_B satisfies the refinement identity

    mu_hat(t) = m_B(S^{-1} t) / sqrt(N) * mu_hat(S^{-1} t)

and is evaluated here as the truncated product over k of
m_B(S^{-k} t) / sqrt(N), with the truncation depth chosen from a
geometric tail bound.  Orthogonality of Fourier frequencies always comes
from one product factor vanishing exactly, so the evaluator reduces
rational arguments mod 1 exactly and reports such zeros as exact.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .ratlinalg import mat_inverse
from .system import AffineSystem, IfsView, fvec

__all__ = [
    "m_eval",
    "weight_function",
    "Weight",
    "weight_from_digits",
    "pi_truncated",
    "chaos_game",
    "MuHatResult",
    "mu_hat",
    "mu_hat_detail",
    "mu_hat_batch",
    "empirical_char",
    "points_to_csv",
]

# a truncated-product factor below this magnitude is an exact zero of mu_hat
EXACT_ZERO_CUTOFF = 1e-13


def m_eval(digits, x) -> complex | np.ndarray:
    """Exponential sum N^{-1/2} sum_b exp(2 pi i b.x); |m_eval| <= sqrt(N).

    Vectorized over a trailing batch of points: x may be a scalar (d=1),
    a d-vector, or an (n, d) array.
    """
    b = np.atleast_2d(np.asarray(digits, dtype=float))
    n, d = b.shape
    xs = np.asarray(x, dtype=float)
    scalar_in = xs.ndim == 0 and d == 1
    pts = xs.reshape(-1, d) if xs.ndim <= 1 else xs
    phases = pts @ b.T
    vals = np.exp(2j * np.pi * phases).sum(axis=1) / np.sqrt(n)
    return complex(vals[0]) if (scalar_in or (xs.ndim == 1 and d > 1)) else vals


def weight_function(digits):
    """W_B = |m_B|^2 / N as a vectorized callable."""
    b = np.atleast_2d(np.asarray(digits, dtype=float))
    n = b.shape[0]

    def w(x):
        v = m_eval(b, x)
        return (np.abs(v) ** 2) / n

    return w


@dataclass(frozen=True)
class Weight:
    """A nonnegative weight W with an analytic (vectorized) evaluator.

    W is always evaluated analytically, never interpolated: its zeros are
    geometrically critical and interpolation would smear them.
    """

    fn: object
    description: str = ""
    lipschitz_bound: float | None = None

    def __call__(self, x):
        return self.fn(x)


def weight_from_digits(digits, description: str = "") -> Weight:
    b = np.atleast_2d(np.asarray(digits, dtype=float))
    # |m_B|^2 has gradient bounded by 4 pi sqrt(N) max|b| / N * N = 4 pi max|b|
    lip = 4.0 * np.pi * float(np.max(np.linalg.norm(b, axis=1))) if len(b) else 0.0
    return Weight(weight_function(b), description or "|m_B|^2/N", lip)


def pi_truncated(view: IfsView, word) -> tuple:
    """Partial symbol-map sum: sum_{k=1..n} matrix^{-k} digit_{w_k}.

    Returns (point, error_bound); the bound is c^n * a with c the
    contraction factor and a the attractor's bounding radius, since the
    dropped tail is the full attractor contracted n times.
    """
    word = list(word)
    if view.digits_exact is not None:
        x = tuple(Fraction(0) for _ in range(view.d))
        for idx in reversed(word):
            x = view.tau(int(idx), x)
        point = x
    else:
        xf = np.zeros(view.d)
        for idx in reversed(word):
            xf = view.tau(int(idx), xf)
        point = xf
    bound = view.contraction_factor ** len(word) * max(view.bounding_radius(), 1e-300)
    return point, bound


def chaos_game(view: IfsView, n_samples: int, seed: int, x0=None, n_streams: int = 1) -> np.ndarray:
    """Sample the invariant measure by random backward iteration.

    i.i.d. uniform digits push forward to mu under the symbol map, so the
    empirical measure of the orbit converges weakly to mu.  Deterministic
    given (seed, n_streams): the seed is split into per-stream children
    and the streams' outputs are concatenated in stream order.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if x0 is None:
        x0 = np.zeros(view.d)
    counts = [n_samples // n_streams] * n_streams
    counts[-1] += n_samples - sum(counts)
    children = np.random.SeedSequence(seed).spawn(n_streams)
    inv_t = view.inv.T
    shifts = view.digits @ inv_t  # tau_i(x) = x @ inv_t + shifts[i]
    chunks = []
    for child, count in zip(children, counts):
        rng = np.random.default_rng(child)
        digits = rng.integers(0, view.n_digits, size=count)
        out = np.empty((count, view.d))
        x = np.asarray(x0, dtype=float).reshape(view.d)
        for k in range(count):
            x = x @ inv_t + shifts[digits[k]]
            out[k] = x
        chunks.append(out)
    return np.concatenate(chunks, axis=0)


@dataclass(frozen=True)
class MuHatResult:
    value: complex
    n_factors: int
    exact_zero: bool
    zero_level: int | None  # k of the vanishing factor, if any

    def __complex__(self):
        return complex(self.value)


def _tail_depth(sys: AffineSystem, t_norm: float, tail_tol: float) -> int:
    """Smallest K with sum_{k>K} 2 pi max|b| |S^{-k} t| < tail_tol, using
    the geometric bound |S^{-k} t| <= c^k |t|."""
    c = float(np.linalg.norm(np.linalg.inv(sys.S), 2))
    if c >= 1.0:
        raise ValueError("S^{-1} is not a 2-norm contraction; cannot bound the tail")
    max_b = float(np.max(np.linalg.norm(sys.B, axis=1)))
    if t_norm == 0.0 or max_b == 0.0:
        return 0
    k = 1
    while 2.0 * np.pi * max_b * t_norm * c ** (k + 1) / (1.0 - c) >= tail_tol:
        k += 1
        if k > 10_000:
            raise RuntimeError("tail bound did not converge")
    return k


def mu_hat_detail(sys: AffineSystem, t, tail_tol: float | None = None) -> MuHatResult:
    """Truncated-product evaluation of mu_hat_B(t) with exact-zero detection.

    Rational t (ints/Fractions) takes the exact path: S^{-k} t is computed
    in Fractions and each phase b.t_k is reduced mod 1 before
    exponentiation, so a vanishing factor is hit at machine precision and
    reported as an exact zero.  mu_hat(0) = 1 exactly; |mu_hat| <= 1.
    """
    if tail_tol is None:
        tail_tol = sys.tail_tol
    if tail_tol <= 0:
        raise ValueError("tail_tol must be positive")
    coords = [t] if isinstance(t, (int, float, Fraction)) else list(t)
    exact = sys.has_exact and all(isinstance(c, (int, Fraction)) for c in coords)
    tf = np.asarray([float(c) for c in coords], dtype=float)
    depth = _tail_depth(sys, float(np.linalg.norm(tf)), tail_tol)
    sqrt_n = np.sqrt(sys.N)
    if exact:
        s_inv = mat_inverse(sys.S_exact)
        tk = np.array(fvec(coords), dtype=object)
        value = 1.0 + 0.0j
        for k in range(1, depth + 1):
            tk = s_inv @ tk
            phases = np.array(
                [float(sum((bb * cc) % 1 for bb, cc in zip(b, tk)) % 1) for b in sys.B_exact]
            )
            factor = np.exp(2j * np.pi * phases).sum() / sqrt_n
            if abs(factor) < EXACT_ZERO_CUTOFF * sqrt_n:
                return MuHatResult(0j, k, True, k)
            value *= factor / sqrt_n
        return MuHatResult(complex(value), depth, False, None)
    s_inv_f = np.linalg.inv(sys.S)
    tk_f = tf.copy()
    value = 1.0 + 0.0j
    for k in range(1, depth + 1):
        tk_f = s_inv_f @ tk_f
        factor = complex(m_eval(sys.B, tk_f if sys.d > 1 else tk_f[0]))
        if abs(factor) < EXACT_ZERO_CUTOFF * sqrt_n:
            return MuHatResult(0j, k, True, k)
        value *= factor / sqrt_n
    return MuHatResult(complex(value), depth, False, None)


def mu_hat(sys: AffineSystem, t, tail_tol: float | None = None) -> complex:
    return mu_hat_detail(sys, t, tail_tol).value


def mu_hat_batch(sys: AffineSystem, ts: np.ndarray, tail_tol: float | None = None) -> np.ndarray:
    """Vectorized float-path mu_hat over rows of ts (n, d).

    Rows where a factor dips below the exact-zero cutoff are set to 0.
    """
    if tail_tol is None:
        tail_tol = sys.tail_tol
    pts = np.atleast_2d(np.asarray(ts, dtype=float))
    if pts.shape[0] == 0:
        return np.zeros(0, dtype=complex)
    depth = _tail_depth(sys, float(np.max(np.linalg.norm(pts, axis=1))), tail_tol)
    sqrt_n = np.sqrt(sys.N)
    s_inv_t = np.linalg.inv(sys.S).T
    values = np.ones(pts.shape[0], dtype=complex)
    zeroed = np.zeros(pts.shape[0], dtype=bool)
    tk = pts.copy()
    for _ in range(depth):
        tk = tk @ s_inv_t
        factors = np.exp(2j * np.pi * (tk @ sys.B.T)).sum(axis=1) / sqrt_n
        zeroed |= np.abs(factors) < EXACT_ZERO_CUTOFF * sqrt_n
        values *= factors / sqrt_n
    values[zeroed] = 0j
    return values


def empirical_char(points: np.ndarray, t) -> complex:
    """Empirical characteristic value mean exp(2 pi i t.x) of a point cloud."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    tv = np.atleast_1d(np.asarray(t, dtype=float))
    return complex(np.exp(2j * np.pi * (pts @ tv)).mean())


def points_to_csv(path, points: np.ndarray) -> None:
    """One row per point, d columns, 17 significant digits."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x%d" % i for i in range(pts.shape[1])])
        for row in pts:
            writer.writerow(["%.17g" % v for v in row])
