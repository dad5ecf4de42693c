"""Bounds on codes over mixed finite alphabets."""
from .errors import MixboundError
from .space import (
    AlphabetProfile,
    MeansSummary,
    SphereSizeTable,
    ball_entropy_bounds,
    ball_size,
    conjecture_report,
    entropy,
    make_profile,
    means,
    sphere_sizes,
    sphere_sizes_poly_oracle,
)
from .johnson import constant_weight_bound, johnson_radius, list_size_bound
from .finite import (
    BoundKind,
    BoundResult,
    elias_bassalygo_upper,
    finite_bounds,
    gv_lower,
    pigeonhole_transfer,
    singleton_upper,
    sphere_packing_upper,
)
from .asymptotic import (
    AlphabetDistribution,
    CurveKind,
    RateCurve,
    curve,
    eb_asymptotic,
    gv_sp_asymptotic,
    lp_asymptotic,
    make_distribution,
    singleton_asymptotic,
)
from .oracle import CodeSet, enumerate_sphere, list_size_measure, max_code
from .spectral import bound_by_ev_certificate, lambda_ball_lower_bound, lambda_exact

__version__ = "0.1.0"
