"""Conditioned photon statistics behind lossless linear interferometers.

The package models imperfect photon sources entering a passive linear
interferometer, with photon counters on all but the first output mode.
Conditioning on a detection pattern changes the photon statistics of the
kept mode; the modules here compute those conditional statistics exactly
(via matrix permanents), score them with figures of merit, build the
known improvement schemes, model imperfect detectors, and search for
better interferometers.
"""

from .conditioner import (
    ConditionalResult,
    DetectionPattern,
    PureState,
    condition_mixed,
    condition_mixed_bs_closed_form,
    condition_pure,
    propagate_pure,
)
from .detectors import (
    BUCKET,
    DetectorModel,
    ObservedPattern,
    observe,
    benchmark_detector_suite,
)
from .errors import (
    BadDistributionShape,
    BadModeIndex,
    BadParameters,
    ConfigError,
    DegenerateTheta,
    DimensionMismatch,
    DimensionTooLarge,
    MismatchedTotals,
    NonSquare,
    NotNormalized,
    NotUnitary,
    PhotonPostError,
    RowsNotOrthonormal,
    ZeroProbabilityPattern,
)
from .fock import (
    InputSpec,
    PhotonConfig,
    compositions,
    distribution_moments,
    enumerate_inputs,
)
from .interferometer import (
    Interferometer,
    beam_splitter,
    complete_rows,
    compose,
    embed_two_mode,
    haar_random,
)
from .merit import (
    MeritReport,
    detection_coefficients,
    figures_of_merit,
    improvement_predicate,
    improvement_threshold,
)
from .permanent import permanent, permanent_naive, permanent_with_multiplicity
from .schemes import (
    ChainScheme,
    PureSchemeParams,
    build_chain,
    build_chain_from_elements,
    chain_asymptotics,
    chain_element_angles,
    pure_stage2_params,
    pure_success_probability,
    pure_three_mode_pipeline,
    purify_super_poissonian,
    run_chain,
)
from .search import (
    SearchReport,
    SearchTask,
    chain_seed_angles,
    detector_patterns,
    evaluate_candidate,
    evaluate_single,
    pair_order,
    reevaluate,
    search_improvement,
    unitary_from_angles,
    verify_nogo_patterns,
    verify_nogo_small,
)

__version__ = "0.1.0"

__all__ = [
    "BUCKET",
    "BadDistributionShape",
    "BadModeIndex",
    "BadParameters",
    "ChainScheme",
    "ConditionalResult",
    "ConfigError",
    "DegenerateTheta",
    "DetectionPattern",
    "DetectorModel",
    "DimensionMismatch",
    "DimensionTooLarge",
    "InputSpec",
    "Interferometer",
    "MeritReport",
    "MismatchedTotals",
    "NonSquare",
    "NotNormalized",
    "NotUnitary",
    "ObservedPattern",
    "PhotonConfig",
    "PhotonPostError",
    "PureSchemeParams",
    "PureState",
    "RowsNotOrthonormal",
    "SearchReport",
    "SearchTask",
    "ZeroProbabilityPattern",
    "beam_splitter",
    "build_chain",
    "build_chain_from_elements",
    "chain_asymptotics",
    "chain_element_angles",
    "chain_seed_angles",
    "complete_rows",
    "compose",
    "compositions",
    "condition_mixed",
    "condition_mixed_bs_closed_form",
    "condition_pure",
    "detection_coefficients",
    "detector_patterns",
    "distribution_moments",
    "embed_two_mode",
    "enumerate_inputs",
    "evaluate_candidate",
    "evaluate_single",
    "figures_of_merit",
    "haar_random",
    "improvement_predicate",
    "improvement_threshold",
    "observe",
    "pair_order",
    "benchmark_detector_suite",
    "permanent",
    "permanent_naive",
    "permanent_with_multiplicity",
    "propagate_pure",
    "pure_stage2_params",
    "pure_success_probability",
    "pure_three_mode_pipeline",
    "purify_super_poissonian",
    "reevaluate",
    "run_chain",
    "search_improvement",
    "unitary_from_angles",
    "verify_nogo_patterns",
    "verify_nogo_small",
]
