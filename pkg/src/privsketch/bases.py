"""Orthonormal sparse bases and their transforms.

Haar wavelets, the orthonormal type-II cosine transform, and the identity
basis. A basis of dimension ``n`` may transform a zero-padded copy of the
input (the Haar transform needs a power-of-two length); ``padded_n`` is the
length actually transformed. Padding carries no energy, so Parseval's
identity holds between an input vector and its coefficients.

The basis matrix itself is never materialized: analysis and synthesis are
O(n) (Haar) or O(n log n) (cosine) procedures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.fft import dct, idct

BASIS_KINDS = ("haar", "cosine", "identity")

_SQRT1_2 = np.sqrt(0.5)


def next_power_of_two(n: int) -> int:
    return 1 << (int(n) - 1).bit_length()


@dataclass(frozen=True)
class SparseBasis:
    """An implicit orthonormal transform of size padded_n x padded_n."""

    kind: str
    n: int
    padded_n: int


def build_basis(kind: str, n: int) -> SparseBasis:
    if kind not in BASIS_KINDS:
        raise ValueError(f"unknown basis kind {kind!r}; expected one of {BASIS_KINDS}")
    if n < 1:
        raise ValueError("basis dimension must be at least 1")
    padded = next_power_of_two(n) if kind == "haar" else int(n)
    return SparseBasis(kind=kind, n=int(n), padded_n=padded)


def zero_pad(basis: SparseBasis, d) -> np.ndarray:
    """Extend an n-vector to the padded transform length with zeros."""
    d = np.asarray(d, dtype=float)
    if d.shape != (basis.n,):
        raise ValueError(f"expected a vector of length {basis.n}, got shape {d.shape}")
    if not np.all(np.isfinite(d)):
        raise ValueError("input contains non-finite entries")
    if basis.padded_n == basis.n:
        return d.copy()
    out = np.zeros(basis.padded_n)
    out[: basis.n] = d
    return out


def analyze(basis: SparseBasis, signal) -> np.ndarray:
    """Coefficients of a padded-length signal."""
    signal = np.asarray(signal, dtype=float)
    if signal.shape != (basis.padded_n,):
        raise ValueError(
            f"expected a padded vector of length {basis.padded_n}, got shape {signal.shape}"
        )
    if basis.kind == "haar":
        return _haar_analyze(signal)
    if basis.kind == "cosine":
        return dct(signal, type=2, norm="ortho")
    return signal.copy()


def synthesize(basis: SparseBasis, coeffs) -> np.ndarray:
    """Padded-length signal whose coefficient vector is ``coeffs``."""
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape != (basis.padded_n,):
        raise ValueError(
            f"expected a coefficient vector of length {basis.padded_n}, got shape {coeffs.shape}"
        )
    if basis.kind == "haar":
        return _haar_synthesize(coeffs)
    if basis.kind == "cosine":
        return idct(coeffs, type=2, norm="ortho")
    return coeffs.copy()


def forward(basis: SparseBasis, d) -> np.ndarray:
    """Transform an n-vector into its padded_n coefficient vector."""
    return analyze(basis, zero_pad(basis, d))


def inverse(basis: SparseBasis, coeffs) -> np.ndarray:
    """Signal of a coefficient vector, truncated back to length n."""
    full = synthesize(basis, coeffs)
    if basis.padded_n == basis.n:
        return full
    return full[: basis.n].copy()


def _haar_analyze(signal: np.ndarray) -> np.ndarray:
    # Repeated pairwise averaging/differencing; coefficients come out ordered
    # coarsest scaling first, then details coarsest to finest.
    out = signal.copy()
    m = out.size
    while m > 1:
        half = m // 2
        a = out[0:m:2]
        b = out[1:m:2]
        sums = (a + b) * _SQRT1_2
        diffs = (a - b) * _SQRT1_2
        out[:half] = sums
        out[half:m] = diffs
        m = half
    return out


def _haar_synthesize(coeffs: np.ndarray) -> np.ndarray:
    out = coeffs.copy()
    n = out.size
    m = 2
    while m <= n:
        half = m // 2
        s = out[:half].copy()
        w = out[half:m].copy()
        out[0:m:2] = (s + w) * _SQRT1_2
        out[1:m:2] = (s - w) * _SQRT1_2
        m *= 2
    return out
