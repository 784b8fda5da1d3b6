"""Laplace sampling, the Laplace and exponential mechanisms, and budget
accounting.

Samplers take an explicit generator owned by the caller; there is no hidden
global randomness. Distinct concurrent trials should each derive their own
stream (see seeds.derive_rng).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class PrivacyParams:
    """Privacy budget plus the tuning constants shared across mechanisms.

    epsilon: total budget for one release.
    select_fraction: share of the budget spent on private sparsity selection.
    delta_conf: confidence parameter behind the recovery halting radius.
    C: measurement oversampling constant.
    C2, C3: recovery error-bound constants (diagnostics only; never used to
        calibrate noise).
    C4: weight of the noise term in the sparsity utility score.
    C5: sensitivity constant of the sparsity utility score.
    noise_enabled: test hook; False forces every noise scale to zero. The
        benchmark refuses this in private mode.
    """

    epsilon: float
    select_fraction: float = 0.1
    delta_conf: float = 0.01
    C: float = 4.0
    C2: float = 1.0
    C3: float = 4.0
    C4: float = 1.0
    C5: float = 1.0
    noise_enabled: bool = True

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if not 0.0 <= self.select_fraction < 1.0:
            raise ValueError("select_fraction must lie in [0, 1)")
        if not 0.0 < self.delta_conf < 1.0:
            raise ValueError("delta_conf must lie in (0, 1)")
        for name in ("C", "C2", "C3", "C4", "C5"):
            if getattr(self, name) <= 0:
                raise ValueError(f"constant {name} must be positive")


class BudgetExceededError(RuntimeError):
    """A spend was attempted beyond the ledger's total budget."""


@dataclass
class BudgetLedger:
    """Sequential-composition bookkeeping: labelled spends, never over total."""

    total: float
    spent: list[tuple[str, float]] = field(default_factory=list)

    def spend(self, label: str, amount: float) -> None:
        if amount < 0:
            raise ValueError("cannot spend a negative budget")
        # tiny relative slack so exact splits like 0.1*eps + 0.9*eps pass
        if self.spent_total() + amount > self.total * (1.0 + 1e-12):
            raise BudgetExceededError(
                f"spending {amount} on {label!r} would exceed the total budget "
                f"{self.total} (already spent {self.spent_total()})"
            )
        self.spent.append((label, float(amount)))

    def spent_total(self) -> float:
        return float(sum(amount for _, amount in self.spent))

    def remaining(self) -> float:
        return self.total - self.spent_total()


def laplace(scale: float, rng: np.random.Generator, size=None):
    """Sample from the zero-mean Laplace distribution with the given scale.

    Inverse-CDF sampling on a 64-bit uniform:
    X = -scale * sgn(U - 1/2) * ln(1 - 2|U - 1/2|). A scale of zero
    degenerates to exact zeros, which is what the noise-off hook relies on.
    No side-channel hardening (snapping, discretization) is attempted.
    """
    if scale < 0:
        raise ValueError("scale must be nonnegative")
    if scale == 0:
        return 0.0 if size is None else np.zeros(size)
    u = rng.random(size) - 0.5
    sample = -scale * np.sign(u) * np.log1p(-2.0 * np.abs(u))
    return float(sample) if size is None else sample


def laplacian_mechanism(values, sensitivity: float, epsilon: float, rng) -> np.ndarray:
    """Add i.i.d. Laplace(sensitivity/epsilon) noise to every coordinate."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if sensitivity < 0:
        raise ValueError("sensitivity must be nonnegative")
    values = np.asarray(values, dtype=float)
    return values + laplace(sensitivity / epsilon, rng, size=values.shape)


def exponential_weights(utilities, sensitivities, epsilon: float) -> np.ndarray:
    """Selection probabilities proportional to exp(-eps * u / (2 * sens)).

    Lower utility is better (utilities are error bounds). Scores are shifted
    by their maximum before exponentiation, so the weight vector cannot
    underflow to all zeros.
    """
    u = np.asarray(utilities, dtype=float)
    s = np.asarray(sensitivities, dtype=float)
    if u.size == 0:
        raise ValueError("need at least one candidate")
    if u.shape != s.shape:
        raise ValueError("utilities and sensitivities must align")
    if not np.all(np.isfinite(u)):
        raise ValueError("utilities must be finite")
    if np.any(s <= 0) or not np.all(np.isfinite(s)):
        raise ValueError("sensitivities must be positive and finite")
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    scores = -epsilon * u / (2.0 * s)
    weights = np.exp(scores - scores.max())
    total = weights.sum()
    if not total > 0:  # unreachable after the max shift
        raise RuntimeError("exponential-mechanism weights underflowed")
    return weights / total


def exponential_mechanism(candidates, utility, sensitivity, epsilon: float, rng):
    """Pick one candidate with probability proportional to
    exp(-epsilon * utility(c) / (2 * sensitivity(c))).

    ``utility`` and ``sensitivity`` may be callables evaluated per candidate
    or precomputed sequences aligned with ``candidates``.
    """
    candidates = list(candidates)
    u = [utility(c) for c in candidates] if callable(utility) else utility
    s = [sensitivity(c) for c in candidates] if callable(sensitivity) else sensitivity
    probs = exponential_weights(u, s, epsilon)
    idx = int(rng.choice(len(candidates), p=probs))
    return candidates[idx]


def budget_split(params: PrivacyParams) -> tuple[float, float]:
    """Split the total budget into (selection, release) shares."""
    eps_select = params.select_fraction * params.epsilon
    eps_release = (1.0 - params.select_fraction) * params.epsilon
    return eps_select, eps_release
