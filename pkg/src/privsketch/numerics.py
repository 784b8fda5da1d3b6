"""Small dense linear-algebra kernel for sparse recovery.

Top-S magnitude thresholding and least squares restricted to a support set.
All functions are pure; callers own their arrays.
"""

from __future__ import annotations

import warnings

import numpy as np

# Supports up to this size go through a dense factorization of the normal
# equations; larger ones use conjugate gradient.
DENSE_SOLVE_MAX_SUPPORT = 64
CG_REL_TOL = 1e-10
CG_MAX_ITER_FACTOR = 10
ORTHOGONALITY_TOL = 1e-8


class RankDeficientWarning(UserWarning):
    """Restricted system was rank deficient; minimum-norm solution returned."""


def as_support(indices, n: int) -> np.ndarray:
    """Validate a support set: distinct indices in [0, n), returned sorted."""
    supp = np.asarray(indices, dtype=np.intp).ravel()
    if supp.size and (supp.min() < 0 or supp.max() >= n):
        raise ValueError(f"support indices must lie in [0, {n})")
    if np.unique(supp).size != supp.size:
        raise ValueError("support indices must be distinct")
    return np.sort(supp)


def hard_threshold_top_s(x, s: int) -> np.ndarray:
    """Keep the ``s`` entries of ``x`` largest in magnitude, zeroing the rest.

    Ties are broken toward the lowest index, so the result is deterministic.
    """
    x = np.asarray(x, dtype=float)
    if s < 0 or s > x.size:
        raise ValueError(f"s={s} out of range for a vector of length {x.size}")
    if s == x.size:
        return x.copy()
    order = np.argsort(-np.abs(x), kind="stable")
    out = np.zeros_like(x)
    keep = order[:s]
    out[keep] = x[keep]
    return out


def _minimum_norm(a_cols: np.ndarray, y: np.ndarray) -> np.ndarray:
    warnings.warn(
        "restricted least-squares system is rank deficient; "
        "using the minimum-norm solution",
        RankDeficientWarning,
        stacklevel=3,
    )
    return np.linalg.lstsq(a_cols, y, rcond=None)[0]


def _conjugate_gradient(gram, rhs, rel_tol: float, max_iter: int) -> np.ndarray:
    z = np.zeros_like(rhs)
    r = rhs.copy()
    p = r.copy()
    rs = float(r @ r)
    bound = (rel_tol * np.linalg.norm(rhs)) ** 2
    for _ in range(max_iter):
        if rs <= bound:
            break
        gp = gram @ p
        denom = float(p @ gp)
        if denom <= 0.0:
            # singular direction; the current iterate already solves the
            # consistent part of the system
            break
        alpha = rs / denom
        z += alpha * p
        r -= alpha * gp
        rs_new = float(r @ r)
        p = r + (rs_new / rs) * p
        rs = rs_new
    return z


def restricted_least_squares(a_cols, y, *, cg_max_iter: int | None = None) -> np.ndarray:
    """Coefficients minimizing ``||a_cols @ z - y||_2``.

    Solved through the normal equations: dense factorization for small
    systems, conjugate gradient beyond DENSE_SOLVE_MAX_SUPPORT columns.
    Rank-deficient systems fall back to the minimum-norm solution and emit
    RankDeficientWarning instead of failing.
    """
    a_cols = np.asarray(a_cols, dtype=float)
    y = np.asarray(y, dtype=float)
    k, m = a_cols.shape
    if y.shape != (k,):
        raise ValueError(f"measurement vector must have length {k}")
    if m == 0:
        return np.zeros(0)
    gram = a_cols.T @ a_cols
    rhs = a_cols.T @ y
    if m <= DENSE_SOLVE_MAX_SUPPORT:
        try:
            z = np.linalg.solve(gram, rhs)
        except np.linalg.LinAlgError:
            return _minimum_norm(a_cols, y)
        # a near-singular Gram matrix can pass np.linalg.solve while
        # violating the normal equations; verify and fall back if so
        scale = 1.0 + float(np.abs(rhs).max())
        if not np.all(np.isfinite(z)) or float(np.abs(gram @ z - rhs).max()) > ORTHOGONALITY_TOL * scale:
            return _minimum_norm(a_cols, y)
        return z
    max_iter = cg_max_iter if cg_max_iter is not None else CG_MAX_ITER_FACTOR * k
    return _conjugate_gradient(gram, rhs, rel_tol=CG_REL_TOL, max_iter=max_iter)


def least_squares_on_support(a, y, support) -> np.ndarray:
    """Least-squares solution constrained to be zero off ``support``.

    Returns the n-vector that is zero outside the support and minimizes the
    residual on it; the residual is orthogonal to the spanned columns.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    _, n = a.shape
    supp = as_support(support, n)
    out = np.zeros(n)
    if supp.size:
        out[supp] = restricted_least_squares(a[:, supp], y)
    return out
