"""Phase, weak phase and norm retrieval for finite frames."""

from ._phaseret import (
    CapExceeded,
    DimensionError,
    ParseError,
    PreconditionError,
    analyze,
    classify_wpr_r2,
    does_norm_retrieval,
    does_phase_retrieval,
    inner,
    is_full_spark,
    measurements_equal,
    nonspanning_counterexample,
    phase_relation,
    run_examples,
    spark,
    wpr_falsify,
)

__all__ = [
    "CapExceeded",
    "DimensionError",
    "ParseError",
    "PreconditionError",
    "analyze",
    "classify_wpr_r2",
    "does_norm_retrieval",
    "does_phase_retrieval",
    "inner",
    "is_full_spark",
    "measurements_equal",
    "nonspanning_counterexample",
    "phase_relation",
    "run_examples",
    "spark",
    "wpr_falsify",
]
