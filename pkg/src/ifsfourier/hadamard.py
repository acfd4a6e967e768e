"""Hadamard pairs and duality checks for (B, L, R) systems.

A pair of digit sets (A, B) of common size N is a Hadamard pair when
U = N^{-1/2} (exp(2 pi i a.b))_{a in A, b in B} is unitary.  A duality
system additionally needs R expansive and (R^{-1}B, L) to be a Hadamard
pair, plus the integrality condition R^n b . l in Z for all n >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ratlinalg import is_expansive, spectral_margin
from .system import AffineSystem

__all__ = [
    "UnitarityReport",
    "DualityReport",
    "build_matrix",
    "check_pair",
    "check_duality",
    "tensor",
]


@dataclass(frozen=True)
class UnitarityReport:
    passes: bool
    max_deviation: float  # max abs entry of U*U - I
    order: int
    tol: float

    def to_dict(self):
        return {
            "passes": self.passes,
            "max_deviation": self.max_deviation,
            "order": self.order,
            "tol": self.tol,
        }


@dataclass(frozen=True)
class DualityReport:
    passes: bool
    failures: tuple  # names of failed sub-checks
    expansive: bool
    eigenvalue_margin: float
    unitarity: UnitarityReport
    integrality_mode: str  # "structural" or "numeric"
    integrality_horizon: int
    integrality_deviation: float

    def to_dict(self):
        return {
            "passes": self.passes,
            "failures": list(self.failures),
            "expansive": self.expansive,
            "eigenvalue_margin": self.eigenvalue_margin,
            "unitarity": self.unitarity.to_dict(),
            "integrality": {
                "mode": self.integrality_mode,
                "horizon": self.integrality_horizon,
                "max_deviation": self.integrality_deviation,
            },
        }


def build_matrix(a_set, b_set) -> np.ndarray:
    """U = N^{-1/2} (e^{2 pi i a.b}), rows indexed by a, columns by b."""
    a = np.atleast_2d(np.asarray(a_set, dtype=float))
    b = np.atleast_2d(np.asarray(b_set, dtype=float))
    if a.shape[0] != b.shape[0]:
        raise ValueError("mismatched cardinalities: %d vs %d" % (a.shape[0], b.shape[0]))
    n = a.shape[0]
    phases = a @ b.T
    return np.exp(2j * np.pi * phases) / np.sqrt(n)


def check_pair(a_set, b_set, tol: float = 1e-12) -> UnitarityReport:
    """Report whether U*U = I within tol (max abs entry deviation)."""
    u = build_matrix(a_set, b_set)
    n = u.shape[0]
    dev = float(np.max(np.abs(u.conj().T @ u - np.eye(n))))
    return UnitarityReport(passes=dev < tol, max_deviation=dev, order=n, tol=tol)


def check_duality(sys: AffineSystem, integrality_horizon: int = 16) -> DualityReport:
    """Full duality verification: expansivity, unitarity of (R^{-1}B, L),
    and the integrality condition R^n b . l in Z.

    Integrality quantifies over all n >= 0.  For integer-valued data it is
    proven structurally (R^n b stays an integer vector, so every dot with
    an integer l is an integer).  Otherwise only the finite horizon
    n = 0..integrality_horizon is certified numerically, with the horizon
    reported.
    """
    failures = []
    margin = spectral_margin(sys.R)
    expansive = is_expansive(sys.R)
    if not expansive:
        failures.append("expansivity")
    inv_b = sys.B @ np.linalg.inv(sys.R).T
    unit = check_pair(inv_b, sys.L, sys.unitarity_tol)
    if not unit.passes:
        failures.append("unitarity")
    if sys.exact_integer:
        mode, dev = "structural", 0.0
    else:
        # relative deviation: R^n b grows geometrically, so the float
        # round-off on a genuinely integral dot grows with its magnitude
        mode = "numeric"
        dev = 0.0
        rb = sys.B.copy()
        for _ in range(integrality_horizon + 1):
            dots = rb @ sys.L.T
            frac = np.abs(dots - np.round(dots)) / np.maximum(1.0, np.abs(dots))
            dev = max(dev, float(np.max(frac)))
            rb = rb @ sys.R.T
        if dev > 1e-9:
            failures.append("integrality")
    return DualityReport(
        passes=not failures,
        failures=tuple(failures),
        expansive=expansive,
        eigenvalue_margin=margin,
        unitarity=unit,
        integrality_mode=mode,
        integrality_horizon=integrality_horizon,
        integrality_deviation=dev,
    )


def tensor(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Kronecker product; unitary whenever both factors are."""
    return np.kron(np.asarray(u), np.asarray(v))
