"""Exact destabilization certificates for syzygy bundles on smooth
complete toric surfaces and abstract rational surfaces.

The library decides, in exact rational arithmetic, when the syzygy
bundle of a power of an ample line bundle fails slope stability against
a polarization, and produces a re-verifiable certificate: the
polarization, the effective shift defining the destabilizing subbundle,
the first exponent where the slope violation holds, and both slopes.
"""

__version__ = "0.1.0"

from .divisors import (
    AbstractSurface,
    Divisor,
    Polytope,
    SurfaceModel,
    ToricSurface,
    basis_divisor,
)
from .errors import (
    ConstructionFailedError,
    DegenerateBundleError,
    DimensionMismatchError,
    EmptyGridError,
    FanError,
    HypothesesViolatedError,
    IncompleteFanError,
    InputError,
    InternalError,
    NonIntegralDivisorError,
    NonPrimitiveRayError,
    NonSmoothFanError,
    NotAmpleError,
    NotEffectiveError,
    NotMinusOneCurveError,
    NotNefError,
    OutOfTheoremScopeError,
    PreconditionError,
    RepeatedRayError,
    SyzstabError,
)
from .fan import Fan, SurfaceType, reduce_to_minimal
from .stability import (
    CHI_ASSUMPTION,
    EQUAL,
    GREATER,
    LESS,
    NO_DESTABILIZER,
    NOT_COVERED,
    NOT_SEMISTABLE,
    NOT_STABLE,
    STABLE_POSSIBLE,
    UNSTABLE_BOUNDARY,
    UNSTABLE_EVENTUALLY,
    UNSTABLE_FOR_LARGE_D,
    AlphaBeta,
    AsymptoticVerdict,
    Certificate,
    Destabilizer,
    Polarization,
    StabilityReport,
    Threshold,
    abstract_driver,
    alpha_beta,
    asymptotic_condition,
    construct_polarization,
    d_threshold,
    find_destabilizer,
    hirzebruch_region,
    scan_candidates,
    slope_compare,
    syzygy_slope,
    toric_driver,
)

__all__ = [
    "AbstractSurface",
    "AlphaBeta",
    "AsymptoticVerdict",
    "Certificate",
    "CHI_ASSUMPTION",
    "ConstructionFailedError",
    "DegenerateBundleError",
    "Destabilizer",
    "DimensionMismatchError",
    "Divisor",
    "EmptyGridError",
    "EQUAL",
    "Fan",
    "FanError",
    "GREATER",
    "HypothesesViolatedError",
    "IncompleteFanError",
    "InputError",
    "InternalError",
    "LESS",
    "NO_DESTABILIZER",
    "NOT_COVERED",
    "NOT_SEMISTABLE",
    "NOT_STABLE",
    "NonIntegralDivisorError",
    "NonPrimitiveRayError",
    "NonSmoothFanError",
    "NotAmpleError",
    "NotEffectiveError",
    "NotMinusOneCurveError",
    "NotNefError",
    "OutOfTheoremScopeError",
    "Polarization",
    "Polytope",
    "PreconditionError",
    "RepeatedRayError",
    "STABLE_POSSIBLE",
    "StabilityReport",
    "SurfaceModel",
    "SurfaceType",
    "SyzstabError",
    "Threshold",
    "ToricSurface",
    "UNSTABLE_BOUNDARY",
    "UNSTABLE_EVENTUALLY",
    "UNSTABLE_FOR_LARGE_D",
    "abstract_driver",
    "alpha_beta",
    "asymptotic_condition",
    "basis_divisor",
    "construct_polarization",
    "d_threshold",
    "find_destabilizer",
    "hirzebruch_region",
    "reduce_to_minimal",
    "scan_candidates",
    "slope_compare",
    "syzygy_slope",
    "toric_driver",
]
