"""Exact solver for mean-payoff and energy games via potential reduction.

The public surface re-exports the core data model, the solver, the
independent baselines, the layer analysis and the instance generators.
"""

from .core import (
    INF,
    NEG_INF,
    Edge,
    ExtInt,
    GameGraph,
    Owner,
    Sign,
    apply_potential,
    extremal_weight,
    is_finite,
    lift_to_simple,
    make_game,
    modified_weight,
    shift_to_nonpositive,
    sign_sets,
    validate,
    zero_potential,
)
from .errors import (
    BadEdgeEndpointError,
    GameError,
    GameParseError,
    GenSpecError,
    IterationCapError,
    SinkVertexError,
    SolverInternalError,
    TooLargeError,
    WeightOverflowError,
    ZeroMeanPayoffError,
)
from .gamegen import Family, GenSpec, SplitMix64, generate, generate_simple
from .layers import (
    IterationRecord,
    LayerDecomposition,
    Ordering,
    VerificationReport,
    alpha_bit_width,
    alpha_encoding,
    alternation_depths,
    lex_compare,
    verify_trace,
)
from .oracle import (
    Lasso,
    OracleResult,
    ValueIterationResult,
    check_optimal_prefix_bound,
    check_simple,
    induced_lasso,
    oracle_partition,
    oracle_values,
    value_iteration_en_minus,
    value_iteration_en_plus,
)
from .solver import (
    Mode,
    SidePartition,
    SolveResult,
    StepSizes,
    ValueVector,
    certificate_violations,
    check_certificate,
    compute_deltas,
    compute_partition,
    extract_strategies,
    gkk_step,
    is_reduced,
    solve,
)

__all__ = [name for name in dir() if not name.startswith("_")]
