"""The degree-2 construction and its verification suite."""

from .checks import (
    Discriminant,
    LocalScheme,
    birationality_check,
    curve_points,
    discriminant,
    ec_add,
    fixed_point_scheme,
    is_normalized,
    kahler_different,
    ram_image_check,
    recover_psi,
    trace_pushpull,
    verify_all,
    weierstrass_pushforward,
)
from .construct import (
    SIGMA_C,
    TAU,
    TAU_PRIME,
    GluedPair,
    Involution,
    check_invariants,
    construct,
    gamma_of,
    theta_smooth,
)

__all__ = [
    "GluedPair",
    "Involution",
    "TAU",
    "TAU_PRIME",
    "SIGMA_C",
    "gamma_of",
    "theta_smooth",
    "construct",
    "check_invariants",
    "weierstrass_pushforward",
    "is_normalized",
    "recover_psi",
    "kahler_different",
    "fixed_point_scheme",
    "LocalScheme",
    "ram_image_check",
    "discriminant",
    "Discriminant",
    "trace_pushpull",
    "birationality_check",
    "curve_points",
    "ec_add",
    "verify_all",
]
