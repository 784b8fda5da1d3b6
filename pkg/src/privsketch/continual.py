"""Streaming private release with pan-private state.

Dyadic tree counters over noisy prefix sums, a streaming variant of the
compressed release ("cmco"), and a differencing baseline ("contm"). State
kept between steps never contains raw stream values: every per-segment
accumulator is initialized with its Laplace noise the moment the segment
opens, so an intrusion that reads the state sees only noisy sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import bases, privacy, reconstruct, seeds, sensing


def dyadic_segments(t: int, T: int) -> list[tuple[int, int]]:
    """Disjoint power-of-two-aligned intervals exactly covering [1..t].

    The horizon T fixes the alignment grid (padded up to a power of two).
    At most log2(T) + 1 segments are returned, one per 1-bit of t.
    """
    if T < 1:
        raise ValueError("horizon must be at least 1")
    if not 1 <= t <= T:
        raise ValueError(f"t must lie in [1, {T}], got {t}")
    cap = bases.next_power_of_two(T)
    segments = []
    start = 1
    while start <= t:
        size = cap if start == 1 else (start - 1) & -(start - 1)
        while start + size - 1 > t:
            size //= 2
        segments.append((start, start + size - 1))
        start += size
    return segments


@dataclass
class TreeCounterState:
    """Pan-private tree counter over a fixed horizon.

    Tracks ``width`` parallel streams sharing one dyadic segmentation. Each
    segment's accumulator starts from its own Laplace draw and then absorbs
    the stream values falling inside the segment; the map holds at most
    2T - 1 entries ever, no matter what the values are.
    """

    horizon: int
    padded_T: int
    epsilon: float
    sensitivity: float
    seed: int
    width: int = 1
    noise_scale: float = 0.0
    t: int = 0
    segments: dict = field(default_factory=dict)

    @property
    def levels(self) -> int:
        return self.padded_T.bit_length() - 1

    def to_payload(self) -> dict:
        """Serializable snapshot; the only per-segment datum is its noisy sum."""
        return {
            "horizon": self.horizon,
            "padded_T": self.padded_T,
            "epsilon": self.epsilon,
            "sensitivity": self.sensitivity,
            "seed": self.seed,
            "width": self.width,
            "noise_scale": self.noise_scale,
            "t": self.t,
            "segments": {
                f"{a}:{b}": [float(v) for v in acc]
                for (a, b), acc in sorted(self.segments.items())
            },
        }


def make_tree_counter(
    T: int,
    epsilon: float,
    sensitivity: float,
    seed: int,
    width: int = 1,
    noise_enabled: bool = True,
) -> TreeCounterState:
    """Counter for a stream of up to T values, each changing the input by at
    most ``sensitivity`` in L1.

    Per-segment noise is Laplace(sensitivity * (1 + log2 T) / epsilon): one
    value lands in 1 + log2 T segments, so the whole run costs epsilon.
    """
    if T < 1:
        raise ValueError("horizon must be at least 1")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if sensitivity < 0:
        raise ValueError("sensitivity must be nonnegative")
    if width < 1:
        raise ValueError("width must be at least 1")
    padded = bases.next_power_of_two(T)
    scale = sensitivity * (1.0 + np.log2(padded)) / epsilon if noise_enabled else 0.0
    return TreeCounterState(
        horizon=int(T),
        padded_T=int(padded),
        epsilon=float(epsilon),
        sensitivity=float(sensitivity),
        seed=int(seed),
        width=int(width),
        noise_scale=float(scale),
    )


def _segment_noise(state: TreeCounterState, level: int, start: int) -> np.ndarray:
    # One draw per segment for the counter's lifetime, keyed by the segment
    # itself so it is reproducible regardless of when the segment opens.
    rng = seeds.derive_rng(state.seed, seeds.SEGMENT_NOISE, level, start)
    return np.atleast_1d(privacy.laplace(state.noise_scale, rng, size=state.width))


def tree_update(state: TreeCounterState, t: int, value):
    """Fold the value at time t into the counter; return the noisy prefix sum.

    Times must arrive strictly sequentially. The raw value is not retained:
    it is only ever added into accumulators that were born noisy.
    """
    if t != state.t + 1:
        raise ValueError(f"updates must be sequential: expected t={state.t + 1}, got t={t}")
    if t > state.horizon:
        raise ValueError(f"t={t} is beyond the fixed horizon {state.horizon}")
    value = np.broadcast_to(np.asarray(value, dtype=float), (state.width,))
    for level in range(state.levels + 1):
        size = 1 << level
        start = ((t - 1) // size) * size + 1
        key = (start, start + size - 1)
        if key not in state.segments:
            state.segments[key] = _segment_noise(state, level, start)
        state.segments[key] = state.segments[key] + value
    state.t = t
    return prefix_estimate(state)


def prefix_estimate(state: TreeCounterState, t: int | None = None):
    """Noisy sum of the first t stream values (default: the current time).

    Re-querying any time returns the identical value: each segment's noise
    was drawn exactly once, when the segment opened.
    """
    if t is None:
        t = state.t
    if t == 0:
        return 0.0 if state.width == 1 else np.zeros(state.width)
    if not 1 <= t <= state.t:
        raise ValueError(f"can only query times in [1, {state.t}], got {t}")
    total = np.zeros(state.width)
    for key in dyadic_segments(t, state.padded_T):
        total += state.segments[key]
    return float(total[0]) if state.width == 1 else total


@dataclass
class CmcoState:
    """Streaming compressed release over a fixed horizon.

    Holds k pan-private tree counters (one batched state) fed with randomly
    projected stream values; its serialized size depends only on (k, T),
    never on the values seen.
    """

    horizon: int
    k: int
    S: int
    basis_kind: str
    epsilon: float
    delta_conf: float
    seed: int
    counters: TreeCounterState

    @property
    def t(self) -> int:
        return self.counters.t

    def to_payload(self) -> dict:
        return {
            "kind": "cmco",
            "horizon": self.horizon,
            "k": self.k,
            "S": self.S,
            "basis": self.basis_kind,
            "epsilon": self.epsilon,
            "delta_conf": self.delta_conf,
            "seed": self.seed,
            "counters": self.counters.to_payload(),
        }


def make_cmco(
    T: int,
    S: int,
    basis_kind: str,
    epsilon: float,
    seed: int,
    C: float = 4.0,
    delta_conf: float = 0.01,
    noise_enabled: bool = True,
) -> CmcoState:
    """Streaming release sized for S-sparse prefixes over horizon T.

    The measurement count k comes from the static planner with the horizon
    standing in for the dimension. Projected values move each counter's input
    by at most 1/sqrt(k) in L1 per unit change of the stream value, which is
    the sensitivity the counters are calibrated with.
    """
    bases.build_basis(basis_kind, 1)  # validate the kind early
    plan = sensing.plan_measurements(S, T, C)
    counters = make_tree_counter(
        T,
        epsilon,
        1.0 / np.sqrt(plan.k),
        seed,
        width=plan.k,
        noise_enabled=noise_enabled,
    )
    return CmcoState(
        horizon=int(T),
        k=plan.k,
        S=int(S),
        basis_kind=basis_kind,
        epsilon=float(epsilon),
        delta_conf=float(delta_conf),
        seed=int(seed),
        counters=counters,
    )


def cmco_update(state: CmcoState, value: float) -> None:
    """Absorb the next stream value into the pan-private counters."""
    t = state.t + 1
    row = sensing.sensing_row(state.seed, t, state.k)
    tree_update(state.counters, t, row * float(value))


def cmco_reconstruct(state: CmcoState) -> np.ndarray:
    """Decode an estimate of the whole prefix seen so far.

    The projection columns for times 1..t are regenerated from the seed, the
    basis is rebuilt at the prefix dimension, and recovery halts at a radius
    matched to the counters' accumulated noise at this time step.
    """
    t = state.t
    if t < 1:
        raise ValueError("nothing to reconstruct yet")
    v_star = np.atleast_1d(prefix_estimate(state.counters))
    basis = bases.build_basis(state.basis_kind, t)
    phi = sensing.sample_matrix(state.seed, state.k, basis.padded_n)
    operator = sensing.BasisSensingOperator(phi, basis)
    s_eff = max(1, min(state.S, basis.padded_n))
    # per-coordinate noise is a sum over the prefix-decomposition segments;
    # match its variance with an effective single-draw scale
    n_segments = len(dyadic_segments(t, state.counters.padded_T))
    scale = state.counters.noise_scale * float(np.sqrt(n_segments))
    theta = reconstruct.noise_radius_for_scale(state.k, scale, state.delta_conf)
    result = reconstruct.cosamp(
        reconstruct.RecoveryProblem(A=operator, y_star=v_star, S=s_eff, theta=theta)
    )
    return bases.inverse(basis, result.x_star)


def cmco_step(state: CmcoState, value: float) -> np.ndarray:
    """One stream step: update the counters, then reconstruct the prefix."""
    cmco_update(state, value)
    return cmco_reconstruct(state)


@dataclass
class DifferencingState:
    """Baseline: noisy prefix sums differenced into per-time estimates.

    The retained prefix sums are themselves mechanism outputs, so keeping
    them does not weaken the state guarantee.
    """

    horizon: int
    epsilon: float
    seed: int
    counter: TreeCounterState
    released: list[float] = field(default_factory=list)

    @property
    def t(self) -> int:
        return self.counter.t

    def to_payload(self) -> dict:
        return {
            "kind": "contm",
            "horizon": self.horizon,
            "epsilon": self.epsilon,
            "seed": self.seed,
            "released": list(self.released),
            "counter": self.counter.to_payload(),
        }


def make_differencing(T: int, epsilon: float, seed: int, noise_enabled: bool = True) -> DifferencingState:
    counter = make_tree_counter(T, epsilon, 1.0, seed, width=1, noise_enabled=noise_enabled)
    return DifferencingState(horizon=int(T), epsilon=float(epsilon), seed=int(seed), counter=counter)


def differencing_update(state: DifferencingState, value: float) -> None:
    state.released.append(float(tree_update(state.counter, state.t + 1, value)))


def differencing_reconstruct(state: DifferencingState) -> np.ndarray:
    """Per-time estimates: first released sum, then consecutive differences."""
    if not state.released:
        raise ValueError("nothing to reconstruct yet")
    return np.diff(np.asarray(state.released, dtype=float), prepend=0.0)


def differencing_step(state: DifferencingState, value: float) -> np.ndarray:
    differencing_update(state, value)
    return differencing_reconstruct(state)
