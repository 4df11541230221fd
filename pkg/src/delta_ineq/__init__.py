"""Delta-calculus engine and verification harness for weighted
Ostrowski-type inequalities on time scales.

The package splits into five layers:

* :mod:`delta_ineq.timescale` -- time-scale domains (finite grids, integer
  intervals, q-lattices, real intervals) with jump operators and graininess.
* :mod:`delta_ineq.calculus` -- delta derivatives, delta integrals, monomials
  ``h_k``, product rule and integration by parts.
* :mod:`delta_ineq.ostrowski` -- the weighted two-branch kernel, the
  Montgomery-style identity, the inequality bounds in literal and corrected
  variants, Korkine/variance machinery, per-family closed forms, and the
  two-point-weight reduction.
* :mod:`delta_ineq.harness` -- deterministic randomized suites (identity,
  bounds, closed-form crosscheck), sharpness search, witness replay.
* :mod:`delta_ineq.cli` -- the ``delta-ineq`` command line front end.
"""

from .errors import (
    ConfigError,
    ConsistencyError,
    ContinuousScale,
    DeltaIneqError,
    DensePointSampledFunc,
    EmptyRange,
    FamilyMismatch,
    InvalidBounds,
    MissingSample,
    NegativeVariance,
    NotDifferentiable,
    NotInScale,
    OutOfRange,
    UnsupportedTheorem,
)
from .timescale import (
    FiniteGrid,
    IntegerInterval,
    PointClass,
    QLattice,
    RealInterval,
    TimeScale,
    scale_from_json,
    scale_to_json,
)
from .calculus import (
    Func,
    Polynomial,
    Sampled,
    delta_derivative,
    delta_integral,
    feval,
    func_from_json,
    func_to_json,
    h_monomial,
    parts_residual,
    product_rule_residual,
)
from .ostrowski import (
    THEOREMS,
    BoundReport,
    KernelSpec,
    Moments,
    Variant,
    bound_t5,
    bound_t6a,
    bound_t6b,
    bound_t7,
    bound_t8,
    closed_form_rhs,
    delta_derivative_range,
    gruss_variance_check,
    identity_residual,
    kernel_P,
    kernel_moments,
    kernel_spec_from_json,
    kernel_spec_to_json,
    kernel_variance_residual,
    korkine_residual,
    montgomery_lhs,
    montgomery_rhs,
    reduction_weighted_ostrowski,
    sup_abs_delta_derivative,
)
from .harness import (
    FuncFamily,
    SharpnessResult,
    SplitMix64,
    SuiteReport,
    TrialConfig,
    config_from_json,
    config_to_json,
    gen_random_func,
    gen_random_scale,
    replay_witness,
    run_bound_suite,
    run_crosscheck_suite,
    run_identity_suite,
    sharpness_search,
    trial_rng,
)
from .reporting import CSV_COLUMNS, fmt17, json_dumps, rows_to_csv

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CSV_COLUMNS",
    "ConfigError",
    "ConsistencyError",
    "ContinuousScale",
    "DeltaIneqError",
    "DensePointSampledFunc",
    "EmptyRange",
    "FamilyMismatch",
    "FiniteGrid",
    "Func",
    "FuncFamily",
    "IntegerInterval",
    "InvalidBounds",
    "KernelSpec",
    "MissingSample",
    "Moments",
    "NegativeVariance",
    "NotDifferentiable",
    "NotInScale",
    "OutOfRange",
    "PointClass",
    "Polynomial",
    "QLattice",
    "RealInterval",
    "Sampled",
    "SharpnessResult",
    "SplitMix64",
    "SuiteReport",
    "THEOREMS",
    "TimeScale",
    "TrialConfig",
    "UnsupportedTheorem",
    "Variant",
    "bound_t5",
    "bound_t6a",
    "bound_t6b",
    "bound_t7",
    "bound_t8",
    "closed_form_rhs",
    "config_from_json",
    "config_to_json",
    "delta_derivative",
    "delta_derivative_range",
    "delta_integral",
    "feval",
    "fmt17",
    "func_from_json",
    "func_to_json",
    "gen_random_func",
    "gen_random_scale",
    "gruss_variance_check",
    "h_monomial",
    "identity_residual",
    "json_dumps",
    "kernel_P",
    "kernel_moments",
    "kernel_spec_from_json",
    "kernel_spec_to_json",
    "kernel_variance_residual",
    "korkine_residual",
    "montgomery_lhs",
    "montgomery_rhs",
    "parts_residual",
    "product_rule_residual",
    "reduction_weighted_ostrowski",
    "replay_witness",
    "rows_to_csv",
    "run_bound_suite",
    "run_crosscheck_suite",
    "run_identity_suite",
    "scale_from_json",
    "scale_to_json",
    "sharpness_search",
    "sup_abs_delta_derivative",
    "trial_rng",
]
