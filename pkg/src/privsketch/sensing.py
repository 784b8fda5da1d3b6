"""Seed-reproducible random projections with entries +/- 1/sqrt(k).

Measurement sizing from sparsity, the projection matrix itself (regenerable
from its seed, so it never has to be stored or transmitted), and the combined
projection-plus-basis operator consumed by the sparse-recovery solver.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import bases, seeds

# Matrices with at most this many entries keep a dense float64 cache, which
# pays off when the recovery solver applies them repeatedly. Larger ones are
# regenerated from the seeded stream in cache-sized column blocks on every
# product: the block path has the same throughput per entry at any size,
# while a giant cache build is memory-bound and strictly slower.
MATERIALIZE_LIMIT = 1 << 22
# anticipated entries per generated block (columns per block = this / k)
BLOCK_ENTRIES = 1 << 19


@dataclass(frozen=True)
class MeasurementPlan:
    S: int
    n: int
    C: float
    k: int


def _plan_k(S, n: int, C: float):
    # Shared by the scalar planner and the vectorized sparsity-selection
    # scorer so both always agree. The log is floored at 1 so the plan stays
    # defined up to S = n.
    S = np.asarray(S, dtype=float)
    k = np.minimum(float(n), np.ceil(C * S * np.maximum(np.log2(n / S), 1.0)))
    return k.astype(int)


def plan_measurements(S: int, n: int, C: float = 4.0) -> MeasurementPlan:
    """Number of random measurements for recovering an S-sparse n-vector.

    k = min(n, ceil(C * S * max(log2(n/S), 1))).
    """
    if not 1 <= S <= n:
        raise ValueError(f"sparsity must satisfy 1 <= S <= n, got S={S}, n={n}")
    if C <= 0:
        raise ValueError("oversampling constant must be positive")
    k = int(_plan_k(S, n, C))
    return MeasurementPlan(S=int(S), n=int(n), C=float(C), k=max(k, 1))


def _words_per_column(k: int) -> int:
    return (k + 63) // 64


def _column_generator(seed: int, start_col: int, k: int) -> np.random.Generator:
    """Counter-mode generator positioned at column ``start_col`` (1-based).

    Each column's signs come from the bits of ceil(k/64) raw 64-bit words of
    one keyed stream; advance() jumps straight to any column, so any column,
    or any contiguous block of columns, can be regenerated in O(1) setup time
    without storing the matrix.
    """
    bg = np.random.PCG64(
        seed=np.random.SeedSequence(entropy=int(seed), spawn_key=(seeds.SENSING,))
    )
    bg.advance((start_col - 1) * _words_per_column(k))
    return np.random.Generator(bg)


def _sign_block(seed: int, k: int, t0: int, count: int) -> np.ndarray:
    """Entries of columns t0 .. t0+count-1, laid out as a (count, k) array
    (row j holds column t0+j)."""
    g = _column_generator(seed, t0, k)
    words = g.integers(0, 2**64, size=(count, _words_per_column(k)), dtype=np.uint64)
    # bit order within a word is a fixed permutation of i.i.d. uniform bits,
    # so the entries stay i.i.d.; the layout is deterministic per platform
    bits = np.unpackbits(words.view(np.uint8), axis=1)[:, :k]
    block = np.empty(bits.shape)
    np.multiply(bits, 2.0 / np.sqrt(k), out=block)
    block -= 1.0 / np.sqrt(k)
    return block


def sensing_row(seed: int, t: int, k: int) -> np.ndarray:
    """The +/- 1/sqrt(k) projection vector for time (column) ``t``, 1-based.

    A pure function of (seed, t, k): the full matrix [phi_1 ... phi_t] can be
    rebuilt at any point without ever having been stored.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    if k < 1:
        raise ValueError("k must be at least 1")
    return _sign_block(seed, k, t, 1)[0]


@dataclass
class SensingMatrix:
    """A k x n projection matrix defined implicitly by its seed.

    Entries are i.i.d. +/- 1/sqrt(k) with equal probability; every column has
    L1 norm exactly sqrt(k). Dense storage is used only below
    MATERIALIZE_LIMIT entries; otherwise columns are regenerated on the fly.
    """

    k: int
    n: int
    seed: int
    # cached entries in (n, k) layout: row t-1 holds matrix column t
    _columns: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.k, self.n)

    @property
    def materializable(self) -> bool:
        return self.k * self.n <= MATERIALIZE_LIMIT

    def _ensure_columns(self) -> np.ndarray:
        if self._columns is None:
            self._columns = _sign_block(self.seed, self.k, 1, self.n)
        return self._columns

    def _blocks(self):
        count = max(64, BLOCK_ENTRIES // self.k)
        for t0 in range(1, self.n + 1, count):
            width = min(count, self.n - t0 + 1)
            yield t0 - 1, _sign_block(self.seed, self.k, t0, width)

    def toarray(self) -> np.ndarray:
        cols = self._ensure_columns() if self.materializable else _sign_block(
            self.seed, self.k, 1, self.n
        )
        return np.ascontiguousarray(cols.T)

    def column(self, t: int) -> np.ndarray:
        """Column ``t`` (1-based); identical to sensing_row(seed, t, k)."""
        if not 1 <= t <= self.n:
            raise ValueError(f"column index must lie in [1, {self.n}]")
        return sensing_row(self.seed, t, self.k)

    def apply(self, d) -> np.ndarray:
        """The measurement vector y = (matrix) @ d."""
        d = np.asarray(d, dtype=float)
        if d.shape != (self.n,):
            raise ValueError(f"expected a vector of length {self.n}, got shape {d.shape}")
        if self.materializable:
            return d @ self._ensure_columns()
        y = np.zeros(self.k)
        for offset, block in self._blocks():
            y += d[offset : offset + block.shape[0]] @ block
        return y

    def rmatvec(self, r) -> np.ndarray:
        """The adjoint product (matrix)^T @ r."""
        r = np.asarray(r, dtype=float)
        if r.shape != (self.k,):
            raise ValueError(f"expected a vector of length {self.k}, got shape {r.shape}")
        if self.materializable:
            return self._ensure_columns() @ r
        out = np.zeros(self.n)
        for offset, block in self._blocks():
            out[offset : offset + block.shape[0]] = block @ r
        return out

    def matmat(self, b) -> np.ndarray:
        """The product (matrix) @ b for an (n, m) block."""
        b = np.asarray(b, dtype=float)
        if b.ndim != 2 or b.shape[0] != self.n:
            raise ValueError(f"expected an ({self.n}, m) block, got shape {b.shape}")
        if self.materializable:
            return self._ensure_columns().T @ b
        out = np.zeros((self.k, b.shape[1]))
        for offset, block in self._blocks():
            out += block.T @ b[offset : offset + block.shape[0]]
        return out


def sample_matrix(seed: int, k: int, n: int) -> SensingMatrix:
    """Projection matrix for (seed, k, n); same arguments, same matrix.

    Column t equals sensing_row(seed, t, k), which is what makes a streaming
    run and a static run over the same prefix use the same projections.
    """
    if k < 1 or n < 1:
        raise ValueError("matrix dimensions must be at least 1")
    return SensingMatrix(k=int(k), n=int(n), seed=int(seed))


class BasisSensingOperator:
    """The k x padded_n map (projection after basis synthesis), applied lazily.

    Acts on coefficient vectors: matvec(x) measures the signal synthesized
    from x, rmatvec is the exact adjoint, and columns() materializes just the
    columns a restricted least-squares solve needs.
    """

    def __init__(self, phi: SensingMatrix, basis: bases.SparseBasis):
        if phi.n != basis.padded_n:
            raise ValueError(
                f"projection width {phi.n} must match the padded basis dimension {basis.padded_n}"
            )
        self.phi = phi
        self.basis = basis

    @property
    def shape(self) -> tuple[int, int]:
        return (self.phi.k, self.basis.padded_n)

    def matvec(self, x) -> np.ndarray:
        return self.phi.apply(bases.synthesize(self.basis, np.asarray(x, dtype=float)))

    def rmatvec(self, r) -> np.ndarray:
        return bases.analyze(self.basis, self.phi.rmatvec(r))

    def columns(self, indices) -> np.ndarray:
        indices = np.asarray(indices, dtype=np.intp)
        m = self.basis.padded_n
        block = np.empty((m, indices.size))
        unit = np.zeros(m)
        for j, idx in enumerate(indices):
            unit[idx] = 1.0
            block[:, j] = bases.synthesize(self.basis, unit)
            unit[idx] = 0.0
        return self.phi.matmat(block)
