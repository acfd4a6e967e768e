"""Stationary measures of the weighted branch walk, and the Riesz product.

The walk x -> tau_l x with branch probability W(tau_l x) has the
transfer operator as its transition expectation, so its stationary law
nu satisfies nu o R_W = nu.  Existence is guaranteed (the invariant set
is nonempty, convex, weakly compact); uniqueness is not, so the chain
estimates one invariant measure and reports batch-mean uncertainty
rather than certifying extremality.

The worked circle example: scale 3, W(e^{it}) = (2/3) cos^2 t, whose
stationary measure is the Riesz product
d nu(t) = (1/2 pi) prod_{k>=1} (1 + cos(2 * 3^k t)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measure import Weight
from .pathspace import ZERO_BRANCH_CUTOFF, _branch_probabilities
from .system import IfsView

__all__ = [
    "ChainSample",
    "run_chain",
    "batch_mean_stderr",
    "fourier_coefficient",
    "riesz_weight",
    "riesz_branch_normalization",
    "riesz_partial_density",
    "riesz_chain",
    "concentration_curve",
]

DEFAULT_BURN_IN = 1_000
DEFAULT_CHAIN_LENGTH = 1_000_000
DEFAULT_BATCHES = 32


@dataclass(frozen=True, eq=False)
class ChainSample:
    """Post-burn-in states of n_chains independent walks, concatenated in
    chain order (chain i occupies the i-th contiguous block)."""

    states: np.ndarray  # (n, d) or (n,) on the circle
    burn_in: int
    seed: int
    n_chains: int

    @property
    def n(self) -> int:
        return self.states.shape[0]

    def blocks(self) -> list:
        return np.array_split(self.states, self.n_chains, axis=0)


def batch_mean_stderr(values: np.ndarray, n_batches: int = DEFAULT_BATCHES) -> tuple:
    """(mean, stderr) by batch means; robust to chain autocorrelation."""
    vals = np.asarray(values)
    batches = np.array_split(vals, n_batches)
    means = np.array([b.mean() for b in batches])
    mean = complex(means.mean()) if np.iscomplexobj(vals) else float(means.mean())
    spread = np.abs(means - means.mean())
    stderr = float(np.sqrt((spread ** 2).mean() / (len(means) - 1)))
    return mean, stderr


def run_chain(weight: Weight, view: IfsView, x0, n: int, burn_in: int = DEFAULT_BURN_IN,
              seed: int = 0, n_chains: int = DEFAULT_BATCHES) -> ChainSample:
    """Sample ~n post-burn-in states of the walk, split over n_chains
    independent chains advanced in lockstep (deterministic given seed)."""
    if n < n_chains:
        n_chains = max(1, n)
    per_chain = n // n_chains
    counts = np.full(n_chains, per_chain)
    counts[-1] += n - int(counts.sum())
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    states = np.tile(np.asarray(x0, dtype=float).reshape(1, view.d), (n_chains, 1))
    max_count = int(counts.max())
    keep = np.empty((n_chains, max_count, view.d))
    idx = np.arange(n_chains)
    for step in range(burn_in + max_count):
        probs = _branch_probabilities(weight, view, states)
        u = rng.random(n_chains)
        choices = np.minimum((u[:, None] >= np.cumsum(probs, axis=1)).sum(axis=1),
                             view.n_digits - 1)
        states = view.tau_all(states)[choices, idx]
        if step >= burn_in:
            keep[:, step - burn_in] = states
    blocks = [keep[i, : counts[i]] for i in range(n_chains)]
    return ChainSample(states=np.concatenate(blocks, axis=0), burn_in=burn_in,
                       seed=seed, n_chains=n_chains)


def fourier_coefficient(sample: ChainSample, freq, angular: bool = False) -> tuple:
    """Empirical nu_hat at a frequency: mean exp(2 pi i t.x) for point
    samples, or mean exp(i n t) for circle samples (angular=True).
    Returns (value, stderr) by batch means over the chains."""
    states = sample.states
    if angular:
        vals = np.exp(1j * float(freq) * states.reshape(-1))
    else:
        tv = np.atleast_1d(np.asarray(freq, dtype=float))
        vals = np.exp(2j * np.pi * (np.atleast_2d(states) @ tv))
    return batch_mean_stderr(vals, sample.n_chains)


# --- the scale-3 Riesz example on the circle -------------------------------

def riesz_weight(t):
    """W(e^{it}) = (2/3) cos^2 t, QMF-normalized for the cube map z -> z^3."""
    return (2.0 / 3.0) * np.cos(np.asarray(t, dtype=float)) ** 2


def riesz_branch_normalization(n_probe: int = 1000, seed: int = 0) -> float:
    """max over probes of |sum_j W((t + 2 pi j)/3) - 1|."""
    rng = np.random.default_rng(seed)
    t = rng.uniform(0.0, 2.0 * np.pi, n_probe)
    total = sum(riesz_weight((t + 2.0 * np.pi * j) / 3.0) for j in range(3))
    return float(np.max(np.abs(total - 1.0)))


def riesz_partial_density(t, n_factors: int) -> np.ndarray:
    """(1/2 pi) prod_{k=1..K} (1 + cos(2 * 3^k t)) >= 0."""
    if n_factors < 1:
        raise ValueError("n_factors must be >= 1")
    tv = np.asarray(t, dtype=float)
    dens = np.ones_like(tv)
    for k in range(1, n_factors + 1):
        dens = dens * (1.0 + np.cos(2.0 * 3.0 ** k * tv))
    return dens / (2.0 * np.pi)


def riesz_chain(n: int, seed: int = 0, burn_in: int = DEFAULT_BURN_IN,
                n_chains: int = DEFAULT_BATCHES, t0: float = 0.0) -> ChainSample:
    """The circle walk t -> (t + 2 pi j)/3 with probability W((t + 2 pi j)/3).

    Stationary law: the Riesz product.  Vectorized across chains; states
    are angles in [0, 2 pi).
    """
    if n < n_chains:
        n_chains = max(1, n)
    per_chain = n // n_chains
    counts = np.full(n_chains, per_chain)
    counts[-1] += n - int(counts.sum())
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    t = np.full(n_chains, float(t0))
    total_steps = burn_in + int(counts.max())
    keep = np.empty((n_chains, int(counts.max())))
    js = np.arange(3.0)
    for step in range(total_steps):
        branches = (t[:, None] + 2.0 * np.pi * js[None, :]) / 3.0
        probs = riesz_weight(branches)
        probs = np.where(probs < ZERO_BRANCH_CUTOFF, 0.0, probs)
        probs /= probs.sum(axis=1, keepdims=True)
        u = rng.random(n_chains)
        choice = np.minimum((u[:, None] >= np.cumsum(probs, axis=1)).sum(axis=1), 2)
        t = branches[np.arange(n_chains), choice]
        if step >= burn_in:
            keep[:, step - burn_in] = t
    states = np.concatenate([keep[i, : counts[i]] for i in range(n_chains)])
    return ChainSample(states=states, burn_in=burn_in, seed=seed, n_chains=n_chains)


def concentration_curve(states: np.ndarray, n_bins: int = 512) -> np.ndarray:
    """(q, mass) pairs: fraction of sample mass in the heaviest q-fraction
    of equal-width bins.  A qualitative singularity indicator: mass piling
    into few bins as the resolution grows."""
    flat = np.asarray(states, dtype=float).reshape(len(states), -1)
    lo, hi = flat.min(axis=0), flat.max(axis=0) + 1e-12
    idx = np.zeros(len(flat), dtype=np.int64)
    for a in range(flat.shape[1]):
        cells = np.minimum(((flat[:, a] - lo[a]) / (hi[a] - lo[a]) * n_bins).astype(int),
                           n_bins - 1)
        idx = idx * n_bins + cells
    _, counts = np.unique(idx, return_counts=True)
    weights = np.sort(counts)[::-1] / len(flat)
    total_bins = n_bins ** flat.shape[1]
    cum = np.cumsum(weights)
    q = (np.arange(1, len(weights) + 1)) / total_bins
    return np.stack([q, cum], axis=1)
