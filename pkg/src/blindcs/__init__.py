"""Sparse signal recovery from sign-only (1-bit) measurements.

The blind solver needs no sparsity input: it minimizes a smooth concave
surrogate of the support count over the sign-consistency constraints by
reweighted l1 rounds, each solved with a first-order primal-dual scheme.
BIHT and a minimal-l1 linear program are included as baselines, together
with a seeded Monte-Carlo harness that reproduces the quantitative
studies.
"""

from .analysis import (
    DescentReport,
    RspEstimate,
    check_descent_properties,
    rsp_rho_estimate,
    worst_set_ratio,
)
from .baselines import (
    BihtParams,
    SimplexError,
    SimplexResult,
    StandardLP,
    biht_solve,
    hard_threshold,
    l1_constraint_lp,
    pv_formulate,
    pv_solve,
    simplex_solve,
)
from .blind import BlindConfig, FixedEpsTrace, blind_solve, fixed_eps_trace
from .estimators import Biht, BlindOneBit, PlanVershyninLP
from .harness import (
    METHODS,
    SweepSpec,
    TrialRecord,
    aggregate_mean_snr,
    parse_config,
    records_to_csv,
    run_method,
    run_sweep,
    sweep_spec_from_config,
    write_csv,
)
from .numerics import (
    PowerIterationError,
    RngStream,
    gaussian,
    mix64,
    spectral_norm,
)
from .pd_solver import PDNumericalError, PDParams, PDState, initial_state, pd_solve
from .plots import EmptyPlotError, PLOT_KINDS, emit_plot
from .problem import (
    Instance,
    ReconResult,
    constraint_residual,
    count_sign_violations,
    expected_norm_bound,
    generate_instance,
    load_instance,
    normalize_constraint_matrix,
    one_bit_measure,
    save_instance,
    sign_constraint_matrix,
    snr_db,
    support_indices,
)
from .prox import (
    project_constraints,
    prox_constraints_conjugate,
    soft_threshold_weighted,
    weighted_l1,
)
from .surrogate import LOG_DET, MANGASARIAN, Surrogate, normalized_weights

__version__ = "0.1.0"

__all__ = [
    "Biht",
    "BihtParams",
    "BlindConfig",
    "BlindOneBit",
    "DescentReport",
    "EmptyPlotError",
    "FixedEpsTrace",
    "Instance",
    "LOG_DET",
    "MANGASARIAN",
    "METHODS",
    "PDNumericalError",
    "PDParams",
    "PDState",
    "PLOT_KINDS",
    "PlanVershyninLP",
    "PowerIterationError",
    "ReconResult",
    "RngStream",
    "RspEstimate",
    "SimplexError",
    "SimplexResult",
    "StandardLP",
    "SweepSpec",
    "Surrogate",
    "TrialRecord",
    "aggregate_mean_snr",
    "biht_solve",
    "blind_solve",
    "check_descent_properties",
    "constraint_residual",
    "count_sign_violations",
    "emit_plot",
    "expected_norm_bound",
    "fixed_eps_trace",
    "gaussian",
    "generate_instance",
    "hard_threshold",
    "initial_state",
    "l1_constraint_lp",
    "load_instance",
    "mix64",
    "normalize_constraint_matrix",
    "normalized_weights",
    "one_bit_measure",
    "parse_config",
    "pd_solve",
    "project_constraints",
    "prox_constraints_conjugate",
    "pv_formulate",
    "pv_solve",
    "records_to_csv",
    "rsp_rho_estimate",
    "run_method",
    "run_sweep",
    "save_instance",
    "sign_constraint_matrix",
    "simplex_solve",
    "snr_db",
    "soft_threshold_weighted",
    "spectral_norm",
    "support_indices",
    "sweep_spec_from_config",
    "weighted_l1",
    "worst_set_ratio",
    "write_csv",
]
