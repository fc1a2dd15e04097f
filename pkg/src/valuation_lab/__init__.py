"""Exact invariants and bounds for divisorial valuations of the plane."""

from .bounds import (
    BoundReport,
    MultiValuation,
    TailComparison,
    TonoValuation,
    ValuationBundle,
    bound_report,
    combinatorial_lambda_bound,
    degree_lower_bound,
    delta0,
    lambda_lower_bound,
    mu_hat_upper_bound,
    multi_ratio_bound,
    multi_valuation,
    ratio_bound,
    satellite_tail_comparison,
    supraminimal_certificate,
    tono_family,
    valuation_bundle,
)
from .configurations import (
    BlockDecomposition,
    Configuration,
    PointRecord,
    append_free_chain,
    block_decomposition,
    build_configuration,
    classify_points,
    extend_with_satellite_tail,
)
from .errors import (
    FileFormatError,
    InvalidConfigurationError,
    ReconstructionError,
    ValuationError,
    VerificationError,
)
from .invariants import (
    InvariantRecord,
    MaximalContactValues,
    MultiplicityVector,
    PuiseuxExponents,
    curvette_vector,
    from_maximal_contact,
    invariant_record,
    maximal_contact_values,
    multiplicity_sequence,
    noether_pairing,
    normalized_volume,
    puiseux_exponents,
    semigroup_values,
    tangent_value,
    volume,
)
from .surface import (
    AffinePolynomial,
    HirzebruchClass,
    NpiResult,
    PlaneClass,
    hirzebruch_class_of_polynomial,
    intersect_hirzebruch,
    intersect_plane,
    lambda_divisor,
    nef_on_generators,
    npi_check,
    strict_transform_plane,
)

__version__ = "0.1.0"
