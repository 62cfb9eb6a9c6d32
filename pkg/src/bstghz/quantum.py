"""Independent quantum check of the stipulated parity rule.

Everything here is computed from the three-qubit state
(|000> - |111>)/sqrt(2) and explicit Pauli tensor products; the parity
rule enters only at the comparison step.  Conventions: the computational
basis is ordered |000> .. |111>, sign eigenstates are
|+-x> = (|0> +- |1>)/sqrt(2) and |+-y> = (|0> +- i|1>)/sqrt(2).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import sqrt

import numpy as np

from .errors import NotEigenstate
from .ghz import (
    ALL_CONTEXTS,
    OMEGA_CONSTRAINTS,
    SIGNS,
    Context,
    GhzVector,
    SignVector,
    context_label,
    context_vectors,
    parity_consistent,
)

EIGEN_TOLERANCE = 1e-12

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
}


def ghz_state() -> np.ndarray:
    """The entangled three-qubit state, as 8 complex amplitudes."""
    psi = np.zeros(8, dtype=complex)
    psi[0] = 1 / sqrt(2)
    psi[7] = -1 / sqrt(2)
    return psi


@dataclass(frozen=True)
class ObservableSpec:
    """A tensor product of one Pauli (x or y) per station."""

    axes: Context

    def __post_init__(self) -> None:
        if len(self.axes) != 3 or any(a not in _PAULI for a in self.axes):
            raise ValueError(f"bad observable axes: {self.axes!r}")

    def matrix(self) -> np.ndarray:
        m = _PAULI[self.axes[0]]
        for a in self.axes[1:]:
            m = np.kron(m, _PAULI[a])
        return m

    def label(self) -> str:
        return context_label(self.axes)


def eigenvalue_for(spec: ObservableSpec, state: np.ndarray) -> float:
    """Eigenvalue of the observable on the state, or NotEigenstate."""
    m = spec.matrix()
    lam = complex(np.vdot(state, m @ state))
    residual = float(np.linalg.norm(m @ state - lam * state))
    if residual > EIGEN_TOLERANCE or abs(lam.imag) > EIGEN_TOLERANCE:
        raise NotEigenstate(
            f"state is not an eigenstate of {spec.label()} "
            f"(residual {residual:.3e})"
        )
    return float(lam.real)


@dataclass(frozen=True)
class EigencheckResult:
    operators: tuple[tuple[ObservableSpec, float], ...]
    product_eigenvalue: float
    pairwise_commuting: bool


def omega_eigencheck() -> EigencheckResult:
    """Eigenvalues of the four product observables and of their product.

    Also verifies the four observables pairwise commute, so the joint
    eigenvalue bookkeeping makes sense.
    """
    psi = ghz_state()
    specs = [ObservableSpec(axes=ctx) for ctx, _ in OMEGA_CONSTRAINTS]
    operators = tuple((s, eigenvalue_for(s, psi)) for s in specs)
    product = np.eye(8, dtype=complex)
    for s in specs:
        product = product @ s.matrix()
    lam = complex(np.vdot(psi, product @ psi))
    residual = float(np.linalg.norm(product @ psi - lam * psi))
    if residual > EIGEN_TOLERANCE:
        raise NotEigenstate("product observable residual exceeds tolerance")
    commuting = all(
        np.allclose(
            a.matrix() @ b.matrix(), b.matrix() @ a.matrix(), atol=EIGEN_TOLERANCE
        )
        for i, a in enumerate(specs)
        for b in specs[i + 1 :]
    )
    return EigencheckResult(
        operators=operators,
        product_eigenvalue=float(lam.real),
        pairwise_commuting=commuting,
    )


def _sign_eigenstate(axis: str, sign: int) -> np.ndarray:
    if axis == "x":
        return np.array([1, sign], dtype=complex) / sqrt(2)
    return np.array([1, sign * 1j], dtype=complex) / sqrt(2)


@lru_cache(maxsize=None)
def outcome_probability(context: Context, signs: SignVector) -> float:
    """Born probability of the joint sign outcome under the axis context."""
    if len(context) != 3 or any(a not in _PAULI for a in context):
        raise ValueError(f"bad context: {context!r}")
    if len(signs) != 3 or any(s not in SIGNS for s in signs):
        raise ValueError(f"bad signs: {signs!r}")
    v = _sign_eigenstate(context[0], signs[0])
    for a, s in zip(context[1:], signs[1:]):
        v = np.kron(v, _sign_eigenstate(a, s))
    amp = complex(np.vdot(v, ghz_state()))
    return float(abs(amp) ** 2)


def context_distribution(context: Context) -> dict[SignVector, float]:
    """Probabilities of all eight joint outcomes of one context."""
    return {
        v.signs: outcome_probability(context, v.signs)
        for v in context_vectors(context)
    }


@dataclass(frozen=True)
class Discrepancy:
    """One joint outcome where rule and state disagree about possibility.

    ``threshold_sensitive`` marks entries whose probability is positive,
    merely below the threshold: those flip back to possible if the
    threshold is lowered, unlike true probability-zero outcomes.
    """

    vector: GhzVector
    stipulated_consistent: bool
    probability: float
    threshold_sensitive: bool


@dataclass(frozen=True)
class DiscrepancyReport:
    threshold: float
    disagreements: tuple[Discrepancy, ...]

    def count_for(self, context: Context) -> int:
        return sum(
            1 for d in self.disagreements if d.vector.context == context
        )


def compare_with_stipulation(threshold: float = 1e-9) -> DiscrepancyReport:
    """Compare parity consistency with probability-above-threshold.

    A disagreement is a joint outcome the rule calls consistent but the
    state gives probability <= threshold, or vice versa.  The four
    product-constrained contexts agree exactly; the other four contexts
    each disagree on four outcomes of probability 1/8, which is the
    price of stipulating one parity rule across all contexts.
    """
    if not 0 < threshold < 1:
        raise ValueError("threshold must lie strictly between 0 and 1")
    disagreements: list[Discrepancy] = []
    for ctx in ALL_CONTEXTS:
        for v in context_vectors(ctx):
            p = outcome_probability(ctx, v.signs)
            possible = p > threshold
            stip = parity_consistent(v)
            if stip != possible:
                disagreements.append(
                    Discrepancy(
                        vector=v,
                        stipulated_consistent=stip,
                        probability=p,
                        threshold_sensitive=EIGEN_TOLERANCE < p <= threshold,
                    )
                )
    return DiscrepancyReport(
        threshold=threshold, disagreements=tuple(disagreements)
    )
