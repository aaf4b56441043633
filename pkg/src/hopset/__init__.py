"""Collision-free balanced frequency hopping sequence sets over GF(p).

Pipeline: generate an m-sequence with a primitive-polynomial LFSR, map it
onto M = p^b frequency spots word by word, rotate it into a base family of
q sequences, then balance the family so no two members ever share a spot
in the same hop while every member uses all spots nearly equally.
"""

from .balancer import FairnessReport, OperationLedger, cfb_balance, fit_linear, mean_operation_curve
from .correlation import (
    AnalysisReport,
    CorrelationProfile,
    analyze_set,
    correlation_profile,
    frequency_histogram,
    hamming_correlation,
    no_hit_zone_width,
    pairwise_profiles,
    peng_fan_bound,
    verify_orthogonality,
)
from .errors import (
    ConfigError,
    DegenerateSeedError,
    EmptySequenceError,
    FamilySizeError,
    HopsetError,
    IncompatibleSequenceError,
    IncompatibleSetError,
    InvalidPolynomialError,
    SequenceFormatError,
    SingularFitError,
    UnsupportedDegreeError,
    UnsupportedDelayError,
)
from .lfsr import LfsrConfig, MSequence, default_polynomial, generate_m_sequence, validate_primitive_polynomial
from .mapping import (
    BALANCED,
    BASE,
    FamilyConfig,
    FrequencyPlan,
    HopSequence,
    SequenceSet,
    build_base_set,
    default_shift,
    set_from_matrix,
    shifted_hop_sequence,
    tuple_map,
    validate_family,
)
from .sim import CollisionReport, SimScenario, compare_sets, simulate

__version__ = "0.1.0"
