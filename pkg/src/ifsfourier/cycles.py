"""Exact cycle enumeration for IFS(L) and W-cycle classification.

A length-p word (l_0, ..., l_{p-1}) over the L digits determines the
composition tau_{l_{p-1}} o ... o tau_{l_0} (tau_{l_0} applied first),
whose unique fixed point is

    x_0 = (S^p - I)^{-1} (l_0 + S l_1 + ... + S^{p-1} l_{p-1}),

computed exactly over the rationals.  The cycle is the forward orbit
x_{k+1} = tau_{l_k}(x_k); it is a W-cycle when the transfer weight
W_B equals 1 at every orbit point, which for exact data reduces to
(b - b_ref).x being an integer for every digit b.

Words are enumerated up to rotation (canonical representative = the
lexicographically least rotation) and words that are powers of shorter
words are skipped, so each stored cycle has minimal period.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .measure import weight_function
from .ratlinalg import identity_rational, mat_pow, solve_exact
from .system import AffineSystem, frac_str, fvec

__all__ = [
    "Cycle",
    "aperiodic_necklaces",
    "cycle_from_word",
    "enumerate_cycles",
    "classify_w",
    "find_w_cycles",
    "power_system",
    "cycles_to_json",
]

W_EXACT_ONE = "w"
W_NOT = "not_w"
W_INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True, eq=False)
class Cycle:
    """A rotation class of aperiodic words with its exact orbit."""

    word: tuple  # canonical (lexicographically least) rotation, L-indices
    period: int
    points: tuple  # p exact points, orbit order, points[0] = fixed point x_0
    is_w_cycle: bool | None = None
    w_status: str = ""

    @property
    def points_float(self) -> np.ndarray:
        return np.array([[float(c) for c in p] for p in self.points], dtype=float)

    def point_set(self) -> frozenset:
        return frozenset(self.points)

    def rotations(self):
        """All rotations of the word with matching base points: rotation r
        starts the orbit at points[r]."""
        p = self.period
        for r in range(p):
            yield tuple(self.word[(r + i) % p] for i in range(p)), self.points[r]

    def to_json_dict(self) -> dict:
        return {
            "word": list(self.word),
            "period": self.period,
            "points": [frac_str(pt) for pt in self.points],
            "is_w_cycle": self.is_w_cycle,
        }


def _min_rotation(word: tuple) -> tuple:
    return min(tuple(word[i:] + word[:i]) for i in range(len(word)))


def _is_aperiodic(word: tuple) -> bool:
    p = len(word)
    for q in range(1, p):
        if p % q == 0 and word == word[:q] * (p // q):
            return False
    return True


def aperiodic_necklaces(n_letters: int, p: int):
    """Canonical representatives of rotation classes of aperiodic length-p
    words over {0..n_letters-1}."""
    for word in itertools.product(range(n_letters), repeat=p):
        if word == _min_rotation(word) and _is_aperiodic(word):
            yield word


def cycle_from_word(sys: AffineSystem, word) -> Cycle:
    """Exact cycle for a word; validates the p-fold round trip exactly."""
    if not sys.has_exact:
        raise ValueError("cycle enumeration needs rational system data")
    word = tuple(int(i) for i in word)
    p = len(word)
    s = sys.S_exact
    sp = mat_pow(s, p) if p > 1 else s
    m = sp - identity_rational(sys.d)
    rhs = np.zeros(sys.d, dtype=object)
    rhs[:] = [Fraction(0)] * sys.d
    acc = identity_rational(sys.d)
    for k, idx in enumerate(word):
        l_vec = np.array(sys.L_exact[idx], dtype=object)
        rhs = rhs + (acc @ l_vec)
        if k + 1 < p:
            acc = acc @ s
    x0 = fvec(solve_exact(m, rhs))
    points = [x0]
    view = sys.l_view
    for idx in word[:-1]:
        points.append(fvec(view.tau(idx, points[-1])))
    closing = fvec(view.tau(word[-1], points[-1]))
    if closing != x0:
        raise AssertionError("cycle round trip failed for word %s" % (word,))
    return Cycle(word=word, period=p, points=tuple(points))


def enumerate_cycles(sys: AffineSystem, p_max: int, verify_distinct: bool = True) -> list:
    """One Cycle per rotation class of aperiodic words of length <= p_max.

    With verify_distinct the standing assumption that distinct length-p
    words have distinct fixed points is checked by exact comparison
    (skipped above 4^8 words per length).
    """
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    out = []
    for p in range(1, p_max + 1):
        cycles_p = [cycle_from_word(sys, w) for w in aperiodic_necklaces(sys.N, p)]
        out.extend(cycles_p)
        if verify_distinct and sys.N ** p <= 65536:
            seen = set()
            for cyc in cycles_p:
                for _, base_point in cyc.rotations():
                    if base_point in seen:
                        raise AssertionError(
                            "distinct words share a fixed point at period %d" % p
                        )
                    seen.add(base_point)
    return out


def _w_equals_one_exact(point: tuple, b_exact) -> bool:
    """W_B(x) = 1 iff all digit phases agree: (b - b_ref).x in Z."""
    ref = b_exact[0]
    for b in b_exact[1:]:
        dot = sum((bb - rr) * xx for bb, rr, xx in zip(b, ref, point))
        if dot.denominator != 1:
            return False
    return True


def classify_w(cycle: Cycle, sys: AffineSystem, tol: float = 1e-9) -> Cycle:
    """Attach the W_B verdict to a cycle.

    Exact path for rational data; float fallback classifies
    |W_B(x) - 1| < tol as a W-cycle and flags the band [tol, 1e-6] as
    inconclusive instead of guessing.
    """
    if sys.has_exact:
        ok = all(_w_equals_one_exact(pt, sys.B_exact) for pt in cycle.points)
        status = W_EXACT_ONE if ok else W_NOT
        return Cycle(cycle.word, cycle.period, cycle.points, ok, status)
    w = weight_function(sys.B)
    devs = [
        abs(float(np.asarray(w(np.asarray(pt, dtype=float))).reshape(-1)[0]) - 1.0)
        for pt in cycle.points
    ]
    worst = max(devs)
    if worst < tol:
        return Cycle(cycle.word, cycle.period, cycle.points, True, W_EXACT_ONE)
    if worst < 1e-6:
        return Cycle(cycle.word, cycle.period, cycle.points, None, W_INCONCLUSIVE)
    return Cycle(cycle.word, cycle.period, cycle.points, False, W_NOT)


def find_w_cycles(sys: AffineSystem, p_max: int) -> list:
    """Enumerate then classify; returns the W-cycles only."""
    classified = [classify_w(c, sys, sys.cycle_tol) for c in enumerate_cycles(sys, p_max)]
    return [c for c in classified if c.is_w_cycle]


def power_system(sys: AffineSystem, p: int) -> AffineSystem:
    """(B^(p), L^(p), R^p) with the N^p compound digits

    B^(p) = {b_0 + R b_1 + ... + R^{p-1} b_{p-1}},
    L^(p) = {l_0 + S l_1 + ... + S^{p-1} l_{p-1}},

    enumerated in lexicographic word order.  A p-cycle of the original
    system is a 1-cycle of the power system with the same points.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if p == 1:
        return sys
    if not sys.has_exact:
        raise ValueError("power systems need rational system data")

    def compound(mat, digits_exact):
        powers = [identity_rational(sys.d)]
        for _ in range(p - 1):
            powers.append(powers[-1] @ mat)
        out = []
        for word in itertools.product(range(sys.N), repeat=p):
            acc = np.zeros(sys.d, dtype=object)
            acc[:] = [Fraction(0)] * sys.d
            for k, idx in enumerate(word):
                acc = acc + powers[k] @ np.array(digits_exact[idx], dtype=object)
            out.append(tuple(acc))
        return out

    b_p = compound(sys.R_exact, sys.B_exact)
    l_p = compound(sys.S_exact, sys.L_exact)
    r_p = mat_pow(sys.R_exact, p)
    return AffineSystem.create(
        r_p, b_p, l_p,
        unitarity_tol=sys.unitarity_tol, tail_tol=sys.tail_tol, cycle_tol=sys.cycle_tol,
        name=(sys.name + "^%d" % p) if sys.name else "",
    )


def cycles_to_json(cycles) -> str:
    return json.dumps([c.to_json_dict() for c in cycles], indent=2, sort_keys=True)
