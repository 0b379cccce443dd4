"""Random fusion frames in R^N: construction, diagnostics, and the
probability bounds that predict when they are nearly tight and nearly
equiangular, with a seeded Monte Carlo harness to check the two agree.
"""

from .angles import (
    AngleReport,
    angle_report,
    equiangular_window,
    hs_inner,
    simplified_window,
    welch_bound,
    window_check,
)
from .bounds import (
    BoundSet,
    PairBound,
    RegimeCheck,
    TightnessBound,
    all_pairs_failure,
    asymptotic_regime,
    beta_lower_tail,
    beta_upper_tail,
    chi2_lower_tail,
    chi2_upper_tail,
    column_norms_bound,
    delta_to_epsilon_angle,
    delta_to_epsilon_tight,
    evaluate_bounds,
    gaussian_frame_failure,
    is_vacuous,
    net_cardinality,
    pair_failure,
    proj_mass_failure,
    ratio_two_sided,
    riesz_partition_failure,
    riesz_subset_failure,
    tightness_failure,
)
from .errors import (
    ConfigInvalidError,
    DegenerateDrawError,
    DimensionMismatchError,
    FrameFormatError,
    FrameToolError,
    InvalidBetaError,
    InvalidDeltaError,
    InvalidDimsError,
    NoConvergenceError,
    NotSymmetricError,
    RankDeficientError,
    TooFewSubspacesError,
    TrialFailureError,
)
from .frames import (
    FrameBoundsReport,
    FusionFrame,
    Subspace,
    build_fusion_frame_from_gaussian,
    frame_bounds,
    frame_bounds_from_operator,
    frame_from_dict,
    frame_operator,
    frame_to_dict,
    load_frame,
    riesz_bounds,
    save_frame,
)
from .linalg import SymEigen, gram, pinv_sqrt_apply, qr_orthonormalize, sym_eigen
from .montecarlo import (
    AggregateReport,
    Chi2TailReport,
    ExperimentConfig,
    TrialResult,
    aggregate_to_dict,
    chi2_draws,
    run_chi2_experiment,
    run_experiment,
    run_trial,
    write_trials_csv,
)
from .rng import RngStream, derive_stream, gaussian_matrix, random_subspace, sphere_vector

__version__ = "0.1.0"

__all__ = [
    "AggregateReport",
    "AngleReport",
    "BoundSet",
    "Chi2TailReport",
    "ConfigInvalidError",
    "DegenerateDrawError",
    "DimensionMismatchError",
    "ExperimentConfig",
    "FrameBoundsReport",
    "FrameFormatError",
    "FrameToolError",
    "FusionFrame",
    "InvalidBetaError",
    "InvalidDeltaError",
    "InvalidDimsError",
    "NoConvergenceError",
    "NotSymmetricError",
    "PairBound",
    "RankDeficientError",
    "RegimeCheck",
    "RngStream",
    "Subspace",
    "SymEigen",
    "TightnessBound",
    "TooFewSubspacesError",
    "TrialFailureError",
    "TrialResult",
    "aggregate_to_dict",
    "all_pairs_failure",
    "angle_report",
    "asymptotic_regime",
    "beta_lower_tail",
    "beta_upper_tail",
    "build_fusion_frame_from_gaussian",
    "chi2_draws",
    "chi2_lower_tail",
    "chi2_upper_tail",
    "column_norms_bound",
    "delta_to_epsilon_angle",
    "delta_to_epsilon_tight",
    "derive_stream",
    "equiangular_window",
    "evaluate_bounds",
    "frame_bounds",
    "frame_bounds_from_operator",
    "frame_from_dict",
    "frame_operator",
    "frame_to_dict",
    "gaussian_frame_failure",
    "gaussian_matrix",
    "gram",
    "hs_inner",
    "is_vacuous",
    "load_frame",
    "net_cardinality",
    "pair_failure",
    "pinv_sqrt_apply",
    "proj_mass_failure",
    "qr_orthonormalize",
    "random_subspace",
    "ratio_two_sided",
    "riesz_bounds",
    "riesz_partition_failure",
    "riesz_subset_failure",
    "run_chi2_experiment",
    "run_experiment",
    "run_trial",
    "save_frame",
    "simplified_window",
    "sphere_vector",
    "sym_eigen",
    "tightness_failure",
    "welch_bound",
    "window_check",
    "write_trials_csv",
]
