"""Genus-2 curves glued from two elliptic curves along their 2-torsion (degree-2 covers)."""

from .ellcurve import ORIGIN, EllCurve, TwoTorsionIso, geometric_iso_for_psi, j_invariant, two_torsion
from .errors import (
    BadParameter,
    DescentError,
    DescriptorMismatch,
    FalsificationError,
    Genus2Error,
    InternalConsistencyError,
    NotAUnit,
    NotThetaSmooth,
    ParseError,
    PreconditionError,
    SquareRootExtractionFailed,
    UnsupportedRing,
)
from .family import FamilyReport, family_bad_locus, family_report, specialize, specialize_commutes
from .glueconstruct import GluedPair, construct, gamma_of, theta_smooth
from .projline import MoebiusMap, ProjPoint, moebius_from_cubics, moebius_from_triples

__all__ = [
    "ORIGIN",
    "EllCurve",
    "TwoTorsionIso",
    "two_torsion",
    "j_invariant",
    "geometric_iso_for_psi",
    "MoebiusMap",
    "ProjPoint",
    "moebius_from_triples",
    "moebius_from_cubics",
    "GluedPair",
    "gamma_of",
    "theta_smooth",
    "construct",
    "FamilyReport",
    "family_bad_locus",
    "family_report",
    "specialize",
    "specialize_commutes",
    "Genus2Error",
    "ParseError",
    "PreconditionError",
    "DescriptorMismatch",
    "NotAUnit",
    "UnsupportedRing",
    "NotThetaSmooth",
    "DescentError",
    "BadParameter",
    "FalsificationError",
    "InternalConsistencyError",
    "SquareRootExtractionFailed",
]
