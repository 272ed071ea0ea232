"""Exact non-archimedean Nevanlinna functions for maps to projective space.

All logarithms are base p and every function of the log-radius s = log_p r is
an exact piecewise-linear function with Fraction breakpoints and slopes.
"""

from ._core import (
    CheckFailure,
    EntireSeries,
    Hypersurface,
    InputError,
    NevanlinnaReport,
    PLFunction,
    ProjectiveMap,
    SharpnessConfig,
    characteristic,
    counting,
    counting_function,
    defect,
    fmt_residual,
    gauss_norm,
    is_prime,
    jacobian_rank_at,
    log_abs,
    newton_polygon,
    plf_max,
    plf_min,
    proximity,
    pullback,
    run,
    series_mul,
    sharpness_family,
    smt_report,
    sorted_proximity_slopes,
    validity_window,
    verify_image_in_variety,
    zero_count,
)

__all__ = [name for name in dir() if not name.startswith("_")]
