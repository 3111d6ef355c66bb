"""The degree-2 symmetric construction: (E, E', psi) -> (C, f, f').

Coordinates.  gamma is the Moebius map of x-lines with
``gamma(e_i) = e'_sigma(i)``.  Put ``a = gamma(inf)``, ``b = gamma^-1(inf)``,
``lam = P_E(b)`` and let the hyperelliptic quotient of C be the t-line with
``x' = lam*t^2 + a``.  Then

* ``C : y^2 = P_E'(lam*t^2 + a)``            (the sextic),
* ``f' : (t, y) -> (lam*t^2 + a, y)``,
* ``f  : (t, y) -> (gamma^-1(lam*t^2 + a), y*h(t))``,

where h is obtained by an exact square root of ``P_E(x(t)) / sextic(t)``.
The square root always comes out as ``+-1/(lam*t^3)``; the sign is fixed so
that ``lam * t^3 * h(t) -> 1`` at ``t = inf``.  That rule commutes with
specializing a family, unlike sign rules based on an ordering of the field.
The opposite sign is ``tau o f``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..ellcurve import EllCurve, TwoTorsionIso, geometric_iso_for_psi
from ..errors import (
    DescriptorMismatch,
    FalsificationError,
    InternalConsistencyError,
    NotThetaSmooth,
    SquareRootExtractionFailed,
)
from ..exactring import Poly, RingElem, function_field
from ..exactring.ratfunc import denom, numer
from ..projline import MoebiusMap, moebius_from_triples


@dataclass(frozen=True)
class Involution:
    """``(t, y) -> (t_sign * t, y_sign * y)`` on the sextic model."""

    name: str
    t_sign: int
    y_sign: int

    def __mul__(self, other: Involution) -> Involution:
        t, y = self.t_sign * other.t_sign, self.y_sign * other.y_sign
        for inv in (IDENTITY, TAU, TAU_PRIME, SIGMA_C):
            if (inv.t_sign, inv.y_sign) == (t, y):
                return inv
        raise AssertionError("signs are +-1")

    def __call__(self, t, y):
        return (t if self.t_sign == 1 else -t, y if self.y_sign == 1 else -y)


IDENTITY = Involution("id", 1, 1)
TAU = Involution("tau", -1, -1)  # automorphism of f
TAU_PRIME = Involution("tau'", -1, 1)  # automorphism of f'
SIGMA_C = Involution("sigma_C", 1, -1)  # hyperelliptic involution


@dataclass(frozen=True)
class GluedPair:
    """The genus-2 curve ``y^2 = sextic(t)`` with its two degree-2 covers.

    Equality compares the model only, not the input curves it was built from,
    so relabelled inputs producing the same model compare equal.
    """

    gamma: MoebiusMap
    a: RingElem
    b: RingElem
    lam: RingElem
    sextic: Poly
    x_of_t: RingElem
    h: RingElem
    E: EllCurve = field(compare=False)
    Ep: EllCurve = field(compare=False)
    psi: TwoTorsionIso = field(compare=False)

    @property
    def ring(self):
        return self.a.ring

    @property
    def tfield(self):
        return self.x_of_t.ring

    @property
    def fbar(self) -> Poly:
        """``lam*t^2 + a``: the x'-coordinate of f' as a polynomial in t."""
        return Poly(self.ring, [self.a, 0, self.lam])

    def f(self, t, y):
        """Image of the affine point (t, y) on E; None (the origin) over t = 0."""
        from ..exactring.ratfunc import rf_eval

        if t == 0:
            return None
        return rf_eval(self.x_of_t, t), y * rf_eval(self.h, t)

    def fprime(self, t, y):
        return self.fbar(t), y

    def formulas(self) -> dict:
        return {
            "f": {"x": str(self.x_of_t), "y": f"y*({self.h})"},
            "fprime": {"x": self.fbar.format("t"), "y": "y"},
        }


def gamma_of(E: EllCurve, Ep: EllCurve, psi: TwoTorsionIso) -> MoebiusMap:
    if E.ring != Ep.ring:
        raise DescriptorMismatch("E and E' live over different fields")
    return moebius_from_triples(list(E.e), [Ep.e[psi(i) - 1] for i in (1, 2, 3)])


def theta_smooth(E: EllCurve, Ep: EllCurve, psi: TwoTorsionIso, gamma: MoebiusMap | None = None) -> bool:
    """True iff gamma moves infinity; cross-checked against the isomorphism criterion."""
    gamma = gamma or gamma_of(E, Ep, psi)
    by_gamma = not gamma.fixes_infinity()
    by_iso = geometric_iso_for_psi(E, Ep, psi) is None
    if by_gamma != by_iso:
        raise InternalConsistencyError(
            f"theta-smoothness criteria disagree for e={E.e}, e'={Ep.e}, sigma={psi}: "
            f"gamma(inf) != inf is {by_gamma}, no geometric isomorphism is {by_iso}"
        )
    return by_gamma


def construct(E: EllCurve, Ep: EllCurve, psi: TwoTorsionIso, check: bool = True) -> GluedPair:
    gamma = gamma_of(E, Ep, psi)
    if not theta_smooth(E, Ep, psi, gamma):
        raise NotThetaSmooth(f"gamma fixes infinity for sigma={psi}: no genus-2 curve")
    K = E.ring
    T = function_field(K, "t")
    ginv = gamma.inverse()
    a = gamma.image_of_infinity().value()
    b = ginv.image_of_infinity().value()
    lam = E.rhs(b)
    assert all(a != ep for ep in Ep.e), "gamma is injective on {e_i, inf}"

    fbar = Poly(K, [a, K.zero, lam])
    f1, f2, f3 = (fbar - ep for ep in Ep.e)
    sextic = f1 * f2 * f3

    p, q, r, s = ginv.entries
    xnum = fbar * p + q
    xden = fbar * r + s
    x_of_t = T.elem(xnum, xden)

    e1, e2, e3 = E.e
    pe_num = (xnum - xden * e1) * (xnum - xden * e2) * (xnum - xden * e3)
    pe_den = xden * xden * xden
    quo, rem = divmod(pe_num, sextic)
    ratio = T.elem(quo, pe_den) if rem.is_zero() else T.elem(pe_num, pe_den * sextic)
    h = ratio.sqrt()
    if h is None:
        raise SquareRootExtractionFailed(f"P_E(x(t))/sextic(t) is not a square in {T.descriptor}")
    h = _fix_sign(h, lam)

    g = GluedPair(gamma, a, b, lam, sextic, x_of_t, h, E, Ep, psi)
    if check:
        check_invariants(g, pe=(pe_num, pe_den))
    return g


def _fix_sign(h: RingElem, lam: RingElem) -> RingElem:
    num, den = numer(h), denom(h)
    if den.degree - num.degree != 3:
        raise SquareRootExtractionFailed(f"h = {h} does not vanish to order 3 at infinity")
    c = num.lc / den.lc * lam
    if c == 1:
        return h
    if c == -1:
        return -h
    raise SquareRootExtractionFailed(f"h = {h}: lam * t^3 * h tends to {c}, not +-1")


def check_invariants(g: GluedPair, pe=None) -> None:
    """Raise :class:`FalsificationError` unless the model identities hold.

    ``pe`` optionally gives ``P_E(x(t))`` as a (numerator, denominator) pair.
    """
    sextic = g.sextic
    if sextic.degree != 6 or not sextic.is_squarefree():
        raise FalsificationError(f"sextic {sextic.format('t')} is not squarefree of degree 6")
    if pe is None:
        v = g.E.rhs(g.x_of_t)
        pe = (numer(v), denom(v))
    hn, hd = numer(g.h), denom(g.h)
    if hn * hn * sextic * pe[1] != pe[0] * hd * hd:
        raise FalsificationError("h^2 * sextic != P_E(x(t)): f does not land on E")
    if g.Ep.poly.compose(g.fbar) != sextic:
        raise FalsificationError("P_E'(lam t^2 + a) != sextic: f' does not land on E'")
    if TAU * TAU_PRIME != SIGMA_C or TAU_PRIME * TAU != SIGMA_C:
        raise FalsificationError("tau o tau' != sigma_C")


def relabeled_inputs(E: EllCurve, psi: TwoTorsionIso):
    """All six relabellings ``(E o pi, sigma o pi)`` of the roots of E."""
    for pi in TwoTorsionIso.all():
        E2 = E.relabel([pi(i) - 1 for i in (1, 2, 3)])
        yield E2, psi * pi
