"""Exact-rational toolkit for metastable convergence.

Checks and derives metastability rates for tail-structured sequences,
evaluates positive bounded formulas under discrete and approximate
satisfaction on finite metric structures, and verifies the dominated
convergence inequality (and its metastable rate form) on finite measure
structures.
"""

from . import henson
from .dct import (
    DctCheck,
    DctSearchResult,
    DirectedFamily,
    dct_inequality_check,
    family_from_json,
    family_to_json,
    integral_sequence,
    metastable_dct_search,
)
from .directed import (
    AffineTail,
    DirectedSet,
    Sampling,
    SamplingReport,
    affine_sampling,
    directed_set_from_json,
    directed_set_to_json,
    explicit_sampling,
    make_finite_directed,
    make_nat,
    parse_f_expression,
    sampling_from_function,
    sampling_from_json,
    sampling_to_json,
    validate_sampling,
)
from .errors import (
    AnchorNotLeast,
    EmptyRate,
    FormulaSyntaxError,
    IncoherentTails,
    MetastableError,
    NonpositiveDelta,
    NonpositiveEpsilon,
    NonpositiveRadius,
    NotDirected,
    NotPartialOrder,
    NotStrictlyIncreasing,
    PreconditionViolated,
    RealQuantifier,
    SamplingDomainError,
    SortMismatch,
    UVOrder,
    UnassignedVariable,
    UnknownSymbol,
    UnsupportedSampling,
)
from .measure import (
    LInfFunction,
    MeasureStructure,
    Report,
    audit_integration,
    audit_preloeb,
    check_measurability,
    integrate,
    linf_from_json,
    linf_to_json,
    measure_from_json,
    measure_to_json,
    total_variation,
)
from .netcore import (
    AuditResult,
    Constant,
    OscBound,
    Periodic,
    RateSpec,
    SequenceSpec,
    brute_min_uniform_rate,
    check_rate,
    eps_cauchy_exact,
    metastable_witness,
    monotone_uniform_rate,
    osc_eta_exact,
    osc_eta_upper,
    osc_segment,
    osc_total_exact,
    periodicity_bound,
    rate_witness,
    sequence_from_csv,
    sequence_from_json,
    sequence_to_json,
    uniform_rate_audit,
)
from .rationals import format_rational, parse_rational

__version__ = "0.1.0"
