"""The construction over a one-parameter base F_p(s) and its specializations.

psi is a constant permutation along the family; families whose 2-torsion
has monodromy are not representable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

from .ellcurve import EllCurve, TwoTorsionIso
from .errors import BadParameter, NotAUnit, NotThetaSmooth, PreconditionError, UnsupportedRing
from .exactring import GF, FunctionField, Poly, PrimeField, RingElem, poly_roots
from .exactring.ratfunc import denom, function_field, numer, rf_eval
from .glueconstruct.construct import GluedPair, construct, gamma_of
from .projline import MoebiusMap

DENOMINATOR = "denominator"
COLLISION = "collision"
THETA = "theta-degeneration"

#: Bad points are searched in F_{p^k} for k up to this bound.
MAX_EXTENSION_DEGREE = 3


@dataclass(frozen=True)
class BadPoint:
    s0: RingElem
    degree: int  # least k with s0 in F_{p^k}
    reasons: frozenset

    def describe(self) -> str:
        where = "F_p" if self.degree == 1 else f"F_p^{self.degree}"
        return f"s = {self.s0} [{where}]: {', '.join(sorted(self.reasons))}"


@dataclass
class FamilyReport:
    E: EllCurve
    Ep: EllCurve
    psi: TwoTorsionIso
    generic: GluedPair | None
    globally_bad: bool
    bad_locus: list
    specializations: dict = field(default_factory=dict)

    def bad_in_prime_field(self) -> set:
        return {b.s0 for b in self.bad_locus if b.degree == 1}


def _family_base(E: EllCurve) -> FunctionField:
    S = E.ring
    if not (isinstance(S, FunctionField) and isinstance(S.base, PrimeField)):
        raise UnsupportedRing(f"families need a base F_p(s), got {S.descriptor}")
    return S


def primitive_matrix(gamma: MoebiusMap) -> tuple:
    """Entries of gamma scaled to coprime polynomials in s (leading entry monic-normalized)."""
    entries = gamma.entries
    dens = [denom(x) for x in entries if not x.is_zero()]
    den_lcm = reduce(lambda a, b: (a * b) // a.gcd(b), dens)
    polys = [numer(x) * (den_lcm // denom(x)) if not x.is_zero() else Poly(den_lcm.ring) for x in entries]
    g = reduce(lambda a, b: a.gcd(b), [q for q in polys if not q.is_zero()])
    polys = [q // g for q in polys]
    lead = next(q for q in polys if not q.is_zero()).lc.inverse()
    return tuple(q * lead for q in polys)


def _roots_up_to(f: Poly, kmax: int):
    """Distinct roots of f over F_p in F_{p^k}, k <= kmax, each with its least k."""
    out = []
    if f.degree <= 0:
        return out
    p = f.ring.p
    for k in range(1, kmax + 1):
        L = GF(p, k)
        for r in sorted(set(poly_roots(f.change_ring(L))), key=lambda z: z.key):
            if k > 1 and any(L.in_subfield(r, d) for d in range(1, k) if k % d == 0):
                continue
            out.append((r, k))
    return out


def family_bad_locus(E: EllCurve, Ep: EllCurve, psi: TwoTorsionIso, max_degree: int = MAX_EXTENSION_DEGREE) -> list:
    """Bad parameter values with reasons, sorted by (degree, value).

    A theta-degeneration point is a root of the lower-left entry of the
    primitive polynomial matrix of gamma that is not already a denominator
    or collision point.  Raises :class:`NotThetaSmooth` when the generic
    fibre is not theta-smooth (the family is globally bad).
    """
    _family_base(E)
    if Ep.ring != E.ring:
        raise PreconditionError("E and E' must share the base F_p(s)")
    reasons = {}

    def mark(poly, why):
        for r, k in _roots_up_to(poly, max_degree):
            reasons.setdefault((r, k), set()).add(why)

    for curve in (E, Ep):
        for x in curve.e:
            mark(denom(x), DENOMINATOR)
        e1, e2, e3 = curve.e
        for u, v in ((e1, e2), (e1, e3), (e2, e3)):
            mark(numer(u - v), COLLISION)
    gamma = gamma_of(E, Ep, psi)
    if gamma.fixes_infinity():
        raise NotThetaSmooth("gamma fixes infinity identically: the family is globally bad")
    c = primitive_matrix(gamma)[2]
    for r, k in _roots_up_to(c, max_degree):
        if (r, k) not in reasons:
            reasons[(r, k)] = {THETA}
    pts = [BadPoint(r, k, frozenset(w)) for (r, k), w in reasons.items()]
    return sorted(pts, key=lambda b: (b.degree, b.s0.key))


def _evaluator(s0: RingElem):
    def ev(x):
        return rf_eval(x, s0)

    return ev


def specialize(g: GluedPair, s0: RingElem) -> GluedPair:
    """Evaluate every stored function of a generic pair at ``s = s0``."""
    ev = _evaluator(s0)
    K0 = s0.ring
    m = [q(s0) for q in primitive_matrix(g.gamma)]
    gamma = MoebiusMap(*(K0.coerce(x) for x in m))
    T0 = function_field(K0, g.tfield.var)

    def ev_t(r):
        return T0.elem(numer(r).map_coeffs(ev, K0), denom(r).map_coeffs(ev, K0))

    return GluedPair(
        gamma=gamma,
        a=ev(g.a),
        b=ev(g.b),
        lam=ev(g.lam),
        sextic=g.sextic.map_coeffs(ev, K0),
        x_of_t=ev_t(g.x_of_t),
        h=ev_t(g.h),
        E=g.E.specialize(ev),
        Ep=g.Ep.specialize(ev),
        psi=g.psi,
    )


def _check_good(E, Ep, psi, s0):
    bad = {(b.s0, b.degree) for b in family_bad_locus(E, Ep, psi)}
    if any(s0 == r for r, _ in bad):
        raise BadParameter(f"s = {s0} lies in the bad locus")


def specialize_commutes(E: EllCurve, Ep: EllCurve, psi: TwoTorsionIso, s0, generic: GluedPair | None = None) -> bool:
    """construct-then-specialize equals specialize-then-construct at a good ``s0``."""
    S = _family_base(E)
    if not isinstance(s0, RingElem):
        s0 = S.base(s0)
    _check_good(E, Ep, psi, s0)
    g = generic or construct(E, Ep, psi)
    ev = _evaluator(s0)
    direct = construct(E.specialize(ev), Ep.specialize(ev), psi)
    return specialize(g, s0) == direct


def family_report(E: EllCurve, Ep: EllCurve, psi: TwoTorsionIso, max_degree: int = MAX_EXTENSION_DEGREE) -> FamilyReport:
    """Generic pair, bad locus and the specialized pair at every good ``s0`` in F_p."""
    S = _family_base(E)
    try:
        bad = family_bad_locus(E, Ep, psi, max_degree)
    except NotThetaSmooth:
        return FamilyReport(E, Ep, psi, None, True, [])
    g = construct(E, Ep, psi)
    report = FamilyReport(E, Ep, psi, g, False, bad)
    bad_fp = report.bad_in_prime_field()
    for s0 in S.base.elements():
        if s0 not in bad_fp:
            report.specializations[s0] = specialize(g, s0)
    return report


def fibre_status(E: EllCurve, Ep: EllCurve, psi: TwoTorsionIso, s0: RingElem) -> str | None:
    """Reason the fibre at ``s0`` is bad, found by specializing the inputs directly; None if good."""
    from .glueconstruct.construct import theta_smooth

    ev = _evaluator(s0)
    try:
        Es, Eps = E.specialize(ev), Ep.specialize(ev)
    except NotAUnit:
        return DENOMINATOR
    except PreconditionError:
        return COLLISION
    return None if theta_smooth(Es, Eps, psi) else THETA
