"""Path-space measures P_x of the weighted branch walk.

A path from x is a digit sequence (omega_1, omega_2, ...) identified
with the states z_k = tau_{omega_k} ... tau_{omega_1} x; the Kolmogorov
measure P_x gives a length-n cylinder the weight

    W(z_1) W(z_2) ... W(z_n),

which is a probability whenever the branch weights sum to one pointwise
(the QMF normalization).  Infinite words ending in an endless repetition
of a cycle word are represented as (prefix, cycle) pairs; for a W-cycle
the repetition factors converge to 1 and the full path weight equals
|mu_hat_B(x + k(prefix))|^2, the identity the closed-form harmonic
estimator is built on.

Monte Carlo sampling is vectorized across paths; the per-step branch
probabilities W(tau_l z) are exact up to float rounding, and weights
below 1e-15 are treated as exactly zero so paths cannot tunnel through
zeros of W.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cycles import Cycle
from .measure import Weight, mu_hat_batch
from .spectrum import k_points_of_depth
from .system import AffineSystem, IfsView

__all__ = [
    "PathEnsemble",
    "HarmonicEstimate",
    "cylinder_weight",
    "cycle_tail_weight",
    "path_weight_with_tail",
    "sample_paths",
    "estimate_h",
    "h_closed_form",
]

ZERO_BRANCH_CUTOFF = 1e-15
QMF_SAMPLING_TOL = 1e-9


def _states_of_word(view: IfsView, x, word):
    """Float states z_1..z_n along a word (digit indices, first applied first)."""
    z = np.asarray(x, dtype=float).reshape(view.d)
    out = np.empty((len(word), view.d))
    for k, idx in enumerate(word):
        z = view.inv @ (z + view.digits[int(idx)])
        out[k] = z
    return out


def cylinder_weight(weight: Weight, view: IfsView, x, word) -> float:
    """prod_k W(z_k) along the word; in [0, 1] under QMF; empty word -> 1."""
    word = list(word)
    if not word:
        return 1.0
    states = _states_of_word(view, x, word)
    w = np.asarray(weight(states if view.d > 1 else states[:, 0]), dtype=float)
    w = np.where(w < ZERO_BRANCH_CUTOFF, 0.0, w)
    return float(np.prod(w))


def cycle_tail_weight(weight: Weight, view: IfsView, z, cycle: Cycle,
                      tol: float = 1e-12, max_blocks: int = 1024) -> float:
    """prod of W over endless repetitions of the cycle word starting at z.

    Converges because the states spiral into the W-cycle where W = 1;
    iteration stops once a whole block contributes less than tol to the
    log-product (with a geometric safety factor from the contraction).
    """
    zf = np.asarray(z, dtype=float).reshape(view.d)
    product = 1.0
    c = view.contraction_factor ** cycle.period
    for _ in range(max_blocks):
        states = _states_of_word(view, zf, cycle.word)
        w = np.asarray(weight(states if view.d > 1 else states[:, 0]), dtype=float)
        w = np.where(w < ZERO_BRANCH_CUTOFF, 0.0, w)
        block = float(np.prod(w))
        product *= block
        if product == 0.0:
            return 0.0
        zf = states[-1]
        dev = float(np.max(np.abs(1.0 - w)))
        if dev / max(1.0 - c, 1e-12) < tol:
            break
    return product


def path_weight_with_tail(weight: Weight, view: IfsView, x, word, cycle: Cycle,
                          tol: float = 1e-12) -> float:
    """P_x of the single infinite path (word, then cycle repeated forever)."""
    prefix = cylinder_weight(weight, view, x, word)
    if prefix == 0.0:
        return 0.0
    states = _states_of_word(view, x, list(word)) if len(list(word)) else None
    z = states[-1] if states is not None and len(states) else np.asarray(x, dtype=float)
    return prefix * cycle_tail_weight(weight, view, z, cycle, tol)


@dataclass(frozen=True, eq=False)
class PathEnsemble:
    """Monte Carlo sample of the branch walk from a common start point."""

    start: np.ndarray
    length: int
    words: np.ndarray  # (count, length) int8 digit indices
    seed: int
    final_states: np.ndarray  # (count, d)
    tail_states: np.ndarray  # (count, tail_window + 1, d), last steps

    @property
    def count(self) -> int:
        return self.words.shape[0]

    def cylinder_frequency(self, word) -> float:
        """Empirical frequency of a prefix cylinder."""
        word = np.asarray(list(word), dtype=self.words.dtype)
        if len(word) > self.length:
            raise ValueError("cylinder longer than the sampled paths")
        hits = np.all(self.words[:, : len(word)] == word, axis=1)
        return float(np.mean(hits))

    def words_to_csv(self, path) -> None:
        """One sampled word per row, digit indices in step order."""
        with open(path, "w", newline="") as fh:
            fh.write(",".join("w%d" % k for k in range(self.length)) + "\n")
            for row in self.words:
                fh.write(",".join(str(int(v)) for v in row) + "\n")


def _branch_probabilities(weight: Weight, view: IfsView, states: np.ndarray) -> np.ndarray:
    """(count, N) branch probabilities W(tau_l z); validates QMF row sums."""
    images = view.tau_all(states)  # (N, count, d)
    probs = np.empty((states.shape[0], view.n_digits))
    for i in range(view.n_digits):
        w = np.asarray(weight(images[i] if view.d > 1 else images[i][:, 0]), dtype=float)
        probs[:, i] = np.where(w < ZERO_BRANCH_CUTOFF, 0.0, w)
    row_sums = probs.sum(axis=1)
    worst = float(np.max(np.abs(row_sums - 1.0)))
    if worst > QMF_SAMPLING_TOL:
        raise ValueError(
            "branch probabilities sum to 1 within %g only up to %g; "
            "is the weight QMF-normalized?" % (QMF_SAMPLING_TOL, worst)
        )
    return probs / row_sums[:, None]


def _walk(weight: Weight, view: IfsView, x, length: int, count: int, seed: int,
          tail_window: int):
    rng = np.random.default_rng(seed)
    states = np.tile(np.asarray(x, dtype=float).reshape(1, view.d), (count, 1))
    words = np.empty((count, length), dtype=np.int8)
    keep_from = length - tail_window
    tail = np.empty((count, tail_window + 1, view.d))
    for step in range(length):
        probs = _branch_probabilities(weight, view, states)
        u = rng.random(count)
        choices = (u[:, None] >= np.cumsum(probs, axis=1)).sum(axis=1)
        choices = np.minimum(choices, view.n_digits - 1)
        words[:, step] = choices
        images = view.tau_all(states)
        states = images[choices, np.arange(count)]
        if step >= keep_from:
            tail[:, step - keep_from + 1] = states
        if step == keep_from - 1:
            tail[:, 0] = states
    if keep_from == 0:
        tail[:, 0] = np.tile(np.asarray(x, dtype=float).reshape(1, view.d), (count, 1))
    return words, states, tail


def sample_paths(weight: Weight, view: IfsView, x, length: int, count: int,
                 seed: int, tail_window: int | None = None) -> PathEnsemble:
    """Draw `count` independent paths of `length` steps from x.

    Deterministic given the seed; empirical cylinder frequencies converge
    to the cylinder weights.  tail_window controls how many trailing
    states are retained (for tail classification).
    """
    if length < 1 or count < 1:
        raise ValueError("length and count must be >= 1")
    if tail_window is None:
        tail_window = min(length, 8)
    tail_window = min(tail_window, length)
    words, final_states, tail = _walk(weight, view, x, length, count, seed, tail_window)
    return PathEnsemble(
        start=np.asarray(x, dtype=float).reshape(view.d),
        length=length,
        words=words,
        seed=seed,
        final_states=final_states,
        tail_states=tail,
    )


@dataclass(frozen=True, eq=False)
class HarmonicEstimate:
    """Monte Carlo estimate of h_C(x) = P_x(paths converging into C)."""

    probabilities: tuple  # one per supplied cycle
    stderrs: tuple
    unclassified: float
    count: int
    radius: float

    @property
    def total(self) -> float:
        return float(sum(self.probabilities))

    def to_dict(self, cycles=None) -> dict:
        rows = []
        for i, (p, s) in enumerate(zip(self.probabilities, self.stderrs)):
            row = {"probability": p, "stderr": s}
            if cycles is not None:
                row["word"] = list(cycles[i].word)
                row["period"] = cycles[i].period
            rows.append(row)
        return {
            "per_cycle": rows,
            "total": self.total,
            "unclassified": self.unclassified,
            "count": self.count,
            "radius": self.radius,
        }


def classification_radius(w_cycles, view: IfsView) -> float:
    """1/8 of the minimum pairwise distance between all W-cycle points;
    falls back to 1/8 of the attractor radius when there is only one
    point in total."""
    pts = np.concatenate([c.points_float for c in w_cycles], axis=0)
    if len(pts) > 1:
        diffs = pts[:, None, :] - pts[None, :, :]
        dist = np.linalg.norm(diffs, axis=2)
        dist[np.diag_indices(len(pts))] = np.inf
        return float(np.min(dist)) / 8.0
    return max(view.bounding_radius(), 1e-6) / 8.0


def estimate_h(weight: Weight, view: IfsView, x, w_cycles, length: int,
               count: int, seed: int, radius: float | None = None) -> HarmonicEstimate:
    """Classify sampled paths by which W-cycle their tail has entered.

    Classification inspects the last period-aligned state of each path:
    for a cycle of period p the state at the largest multiple of p not
    exceeding the path length must fall within `radius` of one of the
    cycle's points.  Paths near no cycle (or, pathologically, near more
    than one) are reported as unclassified mass, never silently dropped.
    """
    if not w_cycles:
        raise ValueError("at least one W-cycle is required")
    if radius is None:
        radius = classification_radius(w_cycles, view)
    max_period = max(c.period for c in w_cycles)
    ens = sample_paths(weight, view, x, length, count, seed, tail_window=max_period)
    assigned = np.full(count, -1)
    ambiguous = np.zeros(count, dtype=bool)
    for ci, cyc in enumerate(w_cycles):
        p = cyc.period
        aligned = (length // p) * p
        offset = aligned - (length - max_period)  # index into tail_states
        states = ens.tail_states[:, offset]
        dist = np.min(
            np.linalg.norm(states[:, None, :] - cyc.points_float[None, :, :], axis=2),
            axis=1,
        )
        hit = dist < radius
        ambiguous |= hit & (assigned >= 0)
        assigned = np.where(hit & (assigned < 0), ci, assigned)
    assigned[ambiguous] = -1
    probs, errs = [], []
    for ci in range(len(w_cycles)):
        p_hat = float(np.mean(assigned == ci))
        probs.append(p_hat)
        errs.append(float(np.sqrt(max(p_hat * (1.0 - p_hat), 1.0 / count) / count)))
    unclassified = float(np.mean(assigned < 0))
    return HarmonicEstimate(
        probabilities=tuple(probs),
        stderrs=tuple(errs),
        unclassified=unclassified,
        count=count,
        radius=radius,
    )


def h_closed_form(sys: AffineSystem, x, cycle: Cycle, depth: int,
                  tail_tol: float | None = None) -> float:
    """Closed-form partial sum of h_C(x): sum over period-aligned words
    omega (depth blocks, duplicates counted once) of
    |mu_hat_B(x + k(omega))|^2.  Nonnegative terms, so the sum increases
    monotonically to h_C(x) as depth grows."""
    ks = k_points_of_depth(sys, cycle, depth)
    pts = np.array([[float(c) for c in k] for k in sorted(ks)])
    pts = pts + np.atleast_1d(np.asarray(x, dtype=float))
    vals = mu_hat_batch(sys, pts, tail_tol)
    return float(np.sum(np.abs(vals) ** 2))
