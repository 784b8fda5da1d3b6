"""privsketch: differentially private release of whole data vectors.

A data vector is compressed with a seeded random projection, the small
synopsis is perturbed with calibrated Laplace noise, and a full-length noisy
vector is decoded with greedy sparse recovery. The released vector can then
answer any downstream query without further budget. A streaming variant keeps
only pan-private tree-counter state and re-decodes prefixes on demand.
"""

from .bases import BASIS_KINDS, SparseBasis, build_basis, forward, inverse
from .cli import SynthSpec, ingest, main, run_bench, synth
from .continual import (
    CmcoState,
    DifferencingState,
    TreeCounterState,
    cmco_reconstruct,
    cmco_step,
    cmco_update,
    differencing_reconstruct,
    differencing_step,
    differencing_update,
    dyadic_segments,
    make_cmco,
    make_differencing,
    make_tree_counter,
    prefix_estimate,
    tree_update,
)
from .mechanism import (
    ReleaseRecord,
    choose_sparsity,
    compressive_mechanism,
    l2_error,
    laplacian_baseline,
    release,
    utility_of_s,
)
from .numerics import hard_threshold_top_s, least_squares_on_support
from .privacy import (
    BudgetExceededError,
    BudgetLedger,
    PrivacyParams,
    budget_split,
    exponential_mechanism,
    laplace,
    laplacian_mechanism,
)
from .reconstruct import RecoveryProblem, RecoveryResult, cosamp, noise_radius
from .sensing import (
    BasisSensingOperator,
    MeasurementPlan,
    SensingMatrix,
    plan_measurements,
    sample_matrix,
    sensing_row,
)

__version__ = "0.1.0"

__all__ = [
    "BASIS_KINDS",
    "BasisSensingOperator",
    "BudgetExceededError",
    "BudgetLedger",
    "CmcoState",
    "DifferencingState",
    "MeasurementPlan",
    "PrivacyParams",
    "RecoveryProblem",
    "RecoveryResult",
    "ReleaseRecord",
    "SensingMatrix",
    "SparseBasis",
    "SynthSpec",
    "TreeCounterState",
    "budget_split",
    "build_basis",
    "choose_sparsity",
    "cmco_reconstruct",
    "cmco_step",
    "cmco_update",
    "compressive_mechanism",
    "cosamp",
    "differencing_reconstruct",
    "differencing_step",
    "differencing_update",
    "dyadic_segments",
    "exponential_mechanism",
    "forward",
    "hard_threshold_top_s",
    "ingest",
    "inverse",
    "l2_error",
    "laplace",
    "laplacian_baseline",
    "laplacian_mechanism",
    "least_squares_on_support",
    "main",
    "make_cmco",
    "make_differencing",
    "make_tree_counter",
    "noise_radius",
    "plan_measurements",
    "prefix_estimate",
    "release",
    "run_bench",
    "sample_matrix",
    "sensing_row",
    "synth",
    "tree_update",
    "utility_of_s",
]
