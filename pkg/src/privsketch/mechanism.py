"""One-shot private release of a whole data vector.

The compressed release ("cm"): project the data down to k measurements, add
Laplace noise there (the single randomized stage that touches the data), and
decode a full-length estimate with sparse recovery. The coordinate-wise
Laplace baseline ("lm") and private selection of the sparsity level live here
too, along with the error metric used throughout the benchmarks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bases, privacy, reconstruct, seeds, sensing

# Above this dimension the sparsity candidates become a geometric grid.
SPARSITY_GRID_LIMIT = 4096


@dataclass
class ReleaseRecord:
    """Outcome of one private release."""

    D_star: np.ndarray
    mechanism: str  # "cm" | "lm"
    epsilon_spent: float
    seed: int
    S_used: int | None = None
    k_used: int | None = None
    l2_error: float | None = None


def l2_error(d, d_star) -> float:
    """Euclidean distance between the original and released vectors."""
    d = np.asarray(d, dtype=float)
    d_star = np.asarray(d_star, dtype=float)
    if d.shape != d_star.shape:
        raise ValueError(f"length mismatch: {d.shape} vs {d_star.shape}")
    return float(np.linalg.norm(d - d_star))


def compressive_mechanism(
    d,
    basis: bases.SparseBasis,
    S: int,
    epsilon: float,
    params: privacy.PrivacyParams,
    seed: int,
    ledger: privacy.BudgetLedger | None = None,
) -> ReleaseRecord:
    """Release ``d`` by measuring, privatizing the measurements, and decoding.

    Pipeline: size k from the sparsity, measure y with the seeded projection,
    perturb y coordinate-wise at scale sqrt(k)/epsilon (per-column L1 norms
    are exactly sqrt(k), which is the sensitivity of the measurement map),
    then run sparse recovery with the matching halting radius and synthesize
    the released vector. Everything after the perturbation is deterministic
    given the seed.
    """
    d = np.asarray(d, dtype=float)
    if d.shape != (basis.n,):
        raise ValueError(f"expected a vector of length {basis.n}, got shape {d.shape}")
    if not 1 <= S <= basis.padded_n:
        raise ValueError(f"sparsity must lie in [1, {basis.padded_n}], got {S}")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")

    plan = sensing.plan_measurements(S, basis.padded_n, params.C)
    phi = sensing.sample_matrix(seed, plan.k, basis.padded_n)
    y = phi.apply(bases.zero_pad(basis, d))
    sensitivity = float(np.sqrt(plan.k)) if params.noise_enabled else 0.0
    y_star = privacy.laplacian_mechanism(
        y, sensitivity, epsilon, seeds.derive_rng(seed, seeds.RELEASE_NOISE)
    )
    theta = (
        reconstruct.noise_radius(plan.k, epsilon, params.delta_conf)
        if params.noise_enabled
        else 0.0
    )
    operator = sensing.BasisSensingOperator(phi, basis)
    result = reconstruct.cosamp(
        reconstruct.RecoveryProblem(A=operator, y_star=y_star, S=S, theta=theta)
    )
    if not np.all(np.isfinite(result.x_star)):
        raise RuntimeError("reconstruction produced non-finite coefficients")
    d_star = bases.inverse(basis, result.x_star)
    if ledger is not None:
        ledger.spend("release", epsilon)
    return ReleaseRecord(
        D_star=d_star,
        mechanism="cm",
        epsilon_spent=float(epsilon),
        seed=int(seed),
        S_used=int(S),
        k_used=plan.k,
        l2_error=l2_error(d, d_star),
    )


def laplacian_baseline(
    d,
    epsilon: float,
    seed: int,
    params: privacy.PrivacyParams | None = None,
    ledger: privacy.BudgetLedger | None = None,
) -> ReleaseRecord:
    """Identity-query baseline: perturb every coordinate with Laplace(1/epsilon)."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    d = np.asarray(d, dtype=float)
    sensitivity = 1.0 if params is None or params.noise_enabled else 0.0
    d_star = privacy.laplacian_mechanism(
        d, sensitivity, epsilon, seeds.derive_rng(seed, seeds.BASELINE_NOISE)
    )
    if ledger is not None:
        ledger.spend("baseline", epsilon)
    return ReleaseRecord(
        D_star=d_star,
        mechanism="lm",
        epsilon_spent=float(epsilon),
        seed=int(seed),
        l2_error=l2_error(d, d_star),
    )


def _coefficient_tails(x: np.ndarray) -> np.ndarray:
    """tails[S] = sum of the (n - S) smallest coefficient magnitudes."""
    mags = np.sort(np.abs(x))[::-1]
    return np.concatenate([np.cumsum(mags[::-1])[::-1], [0.0]])


def sparsity_candidates(n: int) -> list[int]:
    """Every sparsity in [1, n], or a geometric grid once n gets large."""
    if n <= SPARSITY_GRID_LIMIT:
        return list(range(1, n + 1))
    grid = [1]
    while grid[-1] < n:
        grid.append(min(grid[-1] * 2, n))
    return grid


def sparsity_utilities(d, basis, candidates, epsilon_release, params) -> np.ndarray:
    """Error-bound score for each candidate sparsity; lower is better.

    C2 * tail(S)/sqrt(S) measures how far the coefficients are from
    S-sparse; C4 * k(S)/epsilon measures the noise a release at that
    sparsity would carry. k(S) comes from the measurement planner, whose
    floored log keeps the score meaningful all the way to S = n.
    """
    if epsilon_release <= 0:
        raise ValueError("release budget must be positive")
    x = bases.forward(basis, d)
    tails = _coefficient_tails(x)
    S = np.asarray(candidates, dtype=int)
    if S.size and (S.min() < 1 or S.max() > basis.padded_n):
        raise ValueError(f"candidate sparsities must lie in [1, {basis.padded_n}]")
    ks = sensing._plan_k(S, basis.padded_n, params.C)
    return params.C2 * tails[S] / np.sqrt(S) + params.C4 * ks / epsilon_release


def utility_of_s(d, basis, S: int, epsilon_release: float, params) -> float:
    """Score of a single sparsity level (see sparsity_utilities)."""
    return float(sparsity_utilities(d, basis, [S], epsilon_release, params)[0])


def choose_sparsity(
    d,
    basis: bases.SparseBasis,
    epsilon_select: float,
    epsilon_release: float,
    params: privacy.PrivacyParams,
    rng: np.random.Generator,
    ledger: privacy.BudgetLedger | None = None,
) -> int:
    """Pick a sparsity level privately, spending ``epsilon_select``.

    Exponential mechanism over the candidate grid with per-candidate
    sensitivity C5/sqrt(S).
    """
    if epsilon_select <= 0:
        raise ValueError("selection budget must be positive; pass S explicitly to skip selection")
    candidates = sparsity_candidates(basis.padded_n)
    utilities = sparsity_utilities(d, basis, candidates, epsilon_release, params)
    sensitivities = params.C5 / np.sqrt(np.asarray(candidates, dtype=float))
    chosen = privacy.exponential_mechanism(candidates, utilities, sensitivities, epsilon_select, rng)
    if ledger is not None:
        ledger.spend("select", epsilon_select)
    return int(chosen)


def release(
    d,
    basis: bases.SparseBasis,
    params: privacy.PrivacyParams,
    seed: int,
    S: int | None = None,
) -> ReleaseRecord:
    """Full release under params.epsilon, accounted on a single ledger.

    Without an explicit S, a slice of the budget picks the sparsity privately
    and the rest funds the release; with S given the whole budget goes to the
    release.
    """
    ledger = privacy.BudgetLedger(params.epsilon)
    if S is None:
        eps_select, eps_release = privacy.budget_split(params)
        S = choose_sparsity(
            d, basis, eps_select, eps_release, params, seeds.derive_rng(seed, seeds.SELECTION), ledger
        )
    else:
        eps_release = params.epsilon
    record = compressive_mechanism(d, basis, S, eps_release, params, seed, ledger)
    record.epsilon_spent = ledger.spent_total()
    return record
