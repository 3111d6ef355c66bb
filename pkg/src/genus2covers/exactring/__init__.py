"""Exact arithmetic: coefficient rings, polynomials, rational functions."""

from .poly import Poly, poly_roots
from .ratfunc import FunctionField, function_field, numer, denom, rf_eval, rf_map
from .rings import (
    GF,
    QQ,
    ExtensionField,
    PrimeField,
    RationalField,
    ResidueRing,
    Ring,
    RingElem,
    Zmod,
    common_ring,
    least_irreducible,
)
from .serialize import parse_elem, parse_list, parse_ring


def is_square(a: RingElem):
    """``(True, w)`` with ``w*w == a`` when ``a`` is a square in its field, else ``(False, None)``."""
    return a.is_square()


__all__ = [
    "GF",
    "QQ",
    "Zmod",
    "Ring",
    "RingElem",
    "PrimeField",
    "ExtensionField",
    "RationalField",
    "ResidueRing",
    "FunctionField",
    "function_field",
    "Poly",
    "poly_roots",
    "is_square",
    "numer",
    "denom",
    "rf_eval",
    "rf_map",
    "common_ring",
    "least_irreducible",
    "parse_ring",
    "parse_elem",
    "parse_list",
]
