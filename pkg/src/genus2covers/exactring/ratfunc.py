"""Rational function fields K(s) over a supported field K.

Payloads are ``(num, den)`` pairs of :class:`Poly` over K with ``gcd == 1``
and ``den`` monic.  K may itself be a function field, which is how the
t-coordinate functions over a family base F_p(s) are represented.
"""

from __future__ import annotations

from functools import lru_cache

from ..errors import NotAUnit, PreconditionError
from .poly import Poly
from .rings import Ring, RingElem


class FunctionField(Ring):
    is_field = True

    def __init__(self, base: Ring, var: str):
        if not base.is_field:
            raise PreconditionError(f"rational functions need a field base, got {base.descriptor}")
        if not var.isidentifier() or var in base.generators():
            raise PreconditionError(f"bad or clashing variable name {var!r}")
        self.base = base
        self.var = var
        self.characteristic = base.characteristic

    def _params(self):
        return (self.base, self.var)

    @property
    def descriptor(self):
        return f"ratfunc:{self.base.descriptor}:{self.var}"

    # --- canonical form ---------------------------------------------------------
    def _make(self, num: Poly, den: Poly):
        if den.is_zero():
            raise NotAUnit("rational function with zero denominator")
        if num.is_zero():
            return (num, Poly.constant(self.base, 1))
        if den.degree > 0:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
        c = den.lc
        if c != self.base.one:
            inv = c.inverse()
            num = num * inv
            den = den * inv
        return (num, den)

    def elem(self, num, den=None) -> RingElem:
        """Build ``num/den`` from polynomials (or base elements)."""
        num = num if isinstance(num, Poly) else Poly(self.base, [num])
        den = Poly.constant(self.base, 1) if den is None else den
        den = den if isinstance(den, Poly) else Poly(self.base, [den])
        return RingElem(self, self._make(num.change_ring(self.base), den.change_ring(self.base)))

    def _from_int(self, n):
        return (Poly.constant(self.base, n), Poly.constant(self.base, 1))

    def _embeds(self, other):
        return self.base.can_coerce(other)

    def _embed(self, x):
        if self.base.can_coerce(x.ring):
            return (Poly._raw(self.base, [self.base.coerce(x)]), Poly.constant(self.base, 1))
        return None

    # --- payload arithmetic -------------------------------------------------------
    def _add(self, a, b):
        if a[1] == b[1]:
            return self._make(a[0] + b[0], a[1])
        return self._make(a[0] * b[1] + b[0] * a[1], a[1] * b[1])

    def _sub(self, a, b):
        return self._add(a, self._neg(b))

    def _neg(self, a):
        return (-a[0], a[1])

    def _mul(self, a, b):
        return self._make(a[0] * b[0], a[1] * b[1])

    def _inv(self, a):
        if a[0].is_zero():
            raise NotAUnit("inverse of the zero rational function")
        return self._make(a[1], a[0])

    def _is_zero(self, a):
        return a[0].is_zero()

    def _key(self, a):
        return (tuple(c.key for c in a[0].coeffs), tuple(c.key for c in a[1].coeffs))

    def _fmt(self, a):
        num = a[0].format(self.var)
        if a[1].degree == 0:
            return num
        den = a[1].format(self.var)
        if any(ch in num[1:] for ch in "+-/"):
            num = f"({num})"
        if any(ch in den for ch in "+-*/"):
            den = f"({den})"
        return f"{num}/{den}"

    @property
    def gen(self) -> RingElem:
        return RingElem(self, (Poly.x(self.base), Poly.constant(self.base, 1)))

    def generators(self):
        return {self.var: self.gen, **self.base.generators()}

    def random_element(self, rng):
        num = Poly(self.base, [self.base.random_element(rng) for _ in range(rng.randint(1, 3))])
        den = Poly(self.base, [self.base.random_element(rng) for _ in range(rng.randint(1, 3))])
        if den.is_zero():
            den = Poly.constant(self.base, 1)
        return self.elem(num, den)

    def sqrt(self, a):
        num, den = a.v
        if num.is_zero():
            return self.zero
        c = num.lc
        sc = c.sqrt()
        if sc is None:
            return None
        rn = num.monic().sqrt()
        rd = den.sqrt()
        if rn is None or rd is None:
            return None
        return self.elem(rn * sc, rd)


@lru_cache(maxsize=None)
def function_field(base: Ring, var: str) -> FunctionField:
    return FunctionField(base, var)


def numer(a: RingElem) -> Poly:
    return a.v[0]


def denom(a: RingElem) -> Poly:
    return a.v[1]


def rf_eval(a: RingElem, x):
    """Value of the rational function ``a`` at ``x`` (``NotAUnit`` at a pole)."""
    num, den = a.v
    d = den(x)
    if d.is_zero():
        raise NotAUnit(f"{a} has a pole at {x}")
    return num(x) / d


def rf_map(a: RingElem, fn, target: FunctionField) -> RingElem:
    """Apply ``fn`` to every coefficient of numerator and denominator and renormalize."""
    num, den = a.v
    return target.elem(num.map_coeffs(fn, target.base), den.map_coeffs(fn, target.base))


def has_pole_at_zero(a: RingElem) -> bool:
    num, den = a.v
    return den[0].is_zero()


def has_pole_at_infinity(a: RingElem) -> bool:
    num, den = a.v
    return num.degree > den.degree


def value_at_infinity(a: RingElem):
    """Limit at the point at infinity, or None when there is a pole."""
    num, den = a.v
    if num.degree > den.degree:
        return None
    if num.degree < den.degree:
        return a.ring.base.zero
    return num.lc / den.lc
