"""Greedy sparse recovery from noisy linear measurements.

Compressive sampling matching pursuit with a Chebyshev-calibrated residual
target: iteration stops once the residual is no larger than what the known
noise level can explain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numerics

DEFAULT_MAX_ITER_FACTOR = 10
STAGNATION_REL_TOL = 1e-12
IDENTIFY_FACTOR = 2


def noise_radius_for_scale(k: int, scale: float, delta: float) -> float:
    """High-confidence bound on the L2 norm of k i.i.d. Laplace(scale) draws.

    Chebyshev bound on the sum of squares: with probability at least
    1 - delta, ||e||_2^2 <= 2 * scale^2 * (k + sqrt(2k/delta)).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    if scale < 0:
        raise ValueError("scale must be nonnegative")
    return float(np.sqrt(2.0 * scale * scale * (k + np.sqrt(2.0 * k / delta))))


def noise_radius(k: int, epsilon: float, delta: float) -> float:
    """Halting radius for k measurements privatized at budget epsilon.

    The per-measurement Laplace scale is sqrt(k)/epsilon.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return noise_radius_for_scale(k, float(np.sqrt(k) / epsilon), delta)


class _DenseOperator:
    """Adapter giving a plain matrix the operator interface."""

    def __init__(self, a):
        self.a = np.asarray(a, dtype=float)
        if self.a.ndim != 2:
            raise ValueError("expected a 2-D matrix")

    @property
    def shape(self):
        return self.a.shape

    def matvec(self, x):
        return self.a @ x

    def rmatvec(self, r):
        return self.a.T @ r

    def columns(self, indices):
        return self.a[:, np.asarray(indices, dtype=np.intp)]


def as_operator(a):
    return a if hasattr(a, "matvec") else _DenseOperator(a)


@dataclass
class RecoveryProblem:
    """Inputs to one sparse-recovery solve: y_star = A x + e.

    A may be a dense (k, n) matrix or any object exposing shape, matvec,
    rmatvec and columns. theta bounds the noise norm ||e||_2 and doubles as
    the halting target.
    """

    A: object
    y_star: np.ndarray
    S: int
    theta: float = 0.0
    max_iter: int | None = None
    identify_factor: int = IDENTIFY_FACTOR

    def __post_init__(self):
        if self.S < 1:
            raise ValueError("sparsity must be at least 1")
        if not np.isfinite(self.theta) or self.theta < 0:
            raise ValueError("theta must be finite and nonnegative")
        if self.max_iter is not None and self.max_iter < 0:
            raise ValueError("max_iter must be nonnegative")
        if self.identify_factor < 1:
            raise ValueError("identify_factor must be at least 1")


@dataclass
class RecoveryResult:
    x_star: np.ndarray
    iterations: int
    final_residual: float
    halted_by: str  # "residual" | "stagnation" | "max_iter"


def cosamp(problem: RecoveryProblem) -> RecoveryResult:
    """Compressive sampling matching pursuit.

    Per iteration: correlate the residual against the columns, merge the
    strongest 2S candidate indices into the working support, solve least
    squares on that support, keep the S largest coefficients, and refresh the
    residual. Halts when the residual norm reaches theta, stops improving,
    or the iteration cap is hit. The best iterate seen is returned, so the
    final residual never exceeds ||y_star||_2.
    """
    op = as_operator(problem.A)
    k, n = op.shape
    y = np.asarray(problem.y_star, dtype=float)
    if y.shape != (k,):
        raise ValueError(f"expected measurements of length {k}, got shape {y.shape}")
    if problem.S > n:
        raise ValueError(f"sparsity {problem.S} exceeds the dimension {n}")

    x = np.zeros(n)
    residual = y.copy()
    res_norm = float(np.linalg.norm(residual))
    best_x, best_norm = x, res_norm
    if res_norm <= problem.theta:
        return RecoveryResult(x_star=x, iterations=0, final_residual=res_norm, halted_by="residual")

    max_iter = (
        problem.max_iter if problem.max_iter is not None else DEFAULT_MAX_ITER_FACTOR * problem.S
    )
    support = np.zeros(0, dtype=np.intp)
    halted_by = "max_iter"
    iterations = 0
    for it in range(1, max_iter + 1):
        iterations = it
        proxy = op.rmatvec(residual)
        if not np.all(np.isfinite(proxy)):
            raise RuntimeError(f"non-finite residual correlation at iteration {it}")
        width = min(problem.identify_factor * problem.S, n)
        identified = np.argsort(-np.abs(proxy), kind="stable")[:width]
        merged = np.union1d(support, identified)
        coeffs = numerics.restricted_least_squares(op.columns(merged), y)
        trial = np.zeros(n)
        trial[merged] = coeffs
        x = numerics.hard_threshold_top_s(trial, problem.S)
        support = np.flatnonzero(x)
        residual = y - op.matvec(x)
        new_norm = float(np.linalg.norm(residual))
        if not np.isfinite(new_norm):
            raise RuntimeError(f"non-finite residual at iteration {it}")
        if new_norm < best_norm:
            best_x, best_norm = x, new_norm
        if new_norm <= problem.theta:
            halted_by = "residual"
            break
        if new_norm >= res_norm * (1.0 - STAGNATION_REL_TOL):
            halted_by = "stagnation"
            break
        res_norm = new_norm
    return RecoveryResult(
        x_star=best_x, iterations=iterations, final_residual=best_norm, halted_by=halted_by
    )
