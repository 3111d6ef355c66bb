"""Univariate polynomials over any supported ring.

A :class:`Poly` stores ascending coefficients with no trailing zeros (the
zero polynomial has no coefficients).  Division, gcd and the root/square-root
helpers need a field, or at least a unit leading coefficient.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm

from sympy import divisors

from ..errors import NotAUnit, PreconditionError, UnsupportedRing
from .rings import ExtensionField, PrimeField, RationalField, RingElem, _ip_gcd


class Poly:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs=()):
        cs = [c if isinstance(c, RingElem) and c.ring is ring else ring(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, ring, cs):
        # cs: list of RingElem already in `ring`; trailing zeros stripped here
        while cs and cs[-1].is_zero():
            cs.pop()
        f = cls.__new__(cls)
        f.ring = ring
        f.coeffs = tuple(cs)
        return f

    @classmethod
    def x(cls, ring):
        return cls._raw(ring, [ring.zero, ring.one])

    @classmethod
    def constant(cls, ring, c):
        return cls._raw(ring, [ring(c)])

    @classmethod
    def from_roots(cls, ring, roots):
        f = cls.constant(ring, 1)
        for r in roots:
            f = f * cls._raw(ring, [-ring(r), ring.one])
        return f

    # --- basic accessors --------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> RingElem:
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.coeffs == other.coeffs
        if isinstance(other, (int, RingElem)):
            return self == Poly(self.ring, [other])
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        return f"Poly({self.ring.descriptor}, {self.format()})"

    def __str__(self):
        return self.format()

    def format(self, var: str = "x") -> str:
        from .serialize import format_terms

        return format_terms([str(c) for c in self.coeffs], var)

    # --- arithmetic ---------------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                from .rings import common_ring

                R = common_ring(self.ring, other.ring)
                return self.change_ring(R), other.change_ring(R)
            return self, other
        if isinstance(other, (int, Fraction, RingElem)):
            c = self.ring(other) if not isinstance(other, RingElem) else other
            if c.ring != self.ring:
                from .rings import common_ring

                R = common_ring(self.ring, c.ring)
                return self.change_ring(R), Poly._raw(R, [R.coerce(c)])
            return self, Poly._raw(self.ring, [c])
        return None

    def __add__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        f, g = pair
        a, b = f.coeffs, g.coeffs
        if len(a) < len(b):
            a, b = b, a
        R = f.ring
        add = R._add
        cs = [RingElem(R, add(x.v, y.v)) for x, y in zip(a, b)] + list(a[len(b):])
        return Poly._raw(R, cs)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        f, g = pair
        return f + (-g)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RingElem) and other.ring is self.ring:
            R, y, mul = self.ring, other.v, self.ring._mul
            return Poly._raw(R, [RingElem(R, mul(c.v, y)) for c in self.coeffs])
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        f, g = pair
        a, b = f.coeffs, g.coeffs
        R = f.ring
        if not a or not b:
            return Poly._raw(R, [])
        av = [c.v for c in a]
        bv = [c.v for c in b]
        if type(R) is PrimeField:
            out = [0] * (len(av) + len(bv) - 1)
            for i, x in enumerate(av):
                if x:
                    for j, y in enumerate(bv):
                        out[i + j] += x * y
            p = R.p
            return Poly._raw(R, [RingElem(R, c % p) for c in out])
        add, mul, is_zero = R._add, R._mul, R._is_zero
        out = [R.zero.v] * (len(av) + len(bv) - 1)
        for i, x in enumerate(av):
            if not is_zero(x):
                for j, y in enumerate(bv):
                    out[i + j] = add(out[i + j], mul(x, y))
        return Poly._raw(R, [RingElem(R, c) for c in out])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        f, g = self._lift(other)
        if g.is_zero():
            raise NotAUnit("polynomial division by zero")
        R = f.ring
        dg = g.degree
        if f.degree < dg:
            return Poly._raw(R, []), f
        inv = R._inv(g.lc.v)
        r = [c.v for c in f.coeffs]
        gc = [c.v for c in g.coeffs]
        q = [R.zero.v] * (len(r) - dg)
        if type(R) is PrimeField:
            p = R.p
            for shift in range(len(r) - 1 - dg, -1, -1):
                c = r[shift + dg] * inv % p
                q[shift] = c
                if c:
                    for i in range(dg + 1):
                        r[shift + i] = (r[shift + i] - c * gc[i]) % p
        else:
            add, sub, mul, is_zero = R._add, R._sub, R._mul, R._is_zero
            for shift in range(len(r) - 1 - dg, -1, -1):
                c = mul(r[shift + dg], inv)
                q[shift] = c
                if not is_zero(c):
                    for i in range(dg + 1):
                        r[shift + i] = sub(r[shift + i], mul(c, gc[i]))
        return (
            Poly._raw(R, [RingElem(R, c) for c in q]),
            Poly._raw(R, [RingElem(R, c) for c in r[:dg]]),
        )

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> Poly:
        q, r = divmod(self, other)
        if not r.is_zero():
            raise PreconditionError(f"{other} does not divide {self}")
        return q

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        inv = self.lc.inverse()
        return Poly._raw(self.ring, [c * inv for c in self.coeffs])

    def derivative(self) -> Poly:
        return Poly._raw(self.ring, [c * i for i, c in enumerate(self.coeffs) if i > 0])

    def __call__(self, x):
        """Horner evaluation; ``x`` may live in any ring the coefficients coerce into."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return self.ring.zero if not isinstance(x, RingElem) else x.ring.zero
        if isinstance(x, RingElem) and acc.ring != x.ring:
            acc = x.ring.coerce(acc)
        return acc

    def compose(self, g: Poly) -> Poly:
        acc = Poly._raw(self.ring, [])
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def gcd(self, other: Poly) -> Poly:
        """Monic gcd (field coefficients)."""
        a, b = self._lift(other)
        R = a.ring
        if type(R) is PrimeField:
            g = _ip_gcd([c.v for c in a.coeffs], [c.v for c in b.coeffs], R.p)
            if g:
                inv = pow(g[-1], -1, R.p)
                g = [c * inv % R.p for c in g]
            return Poly._raw(R, [RingElem(R, c) for c in g])
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, e: int, m: Poly) -> Poly:
        result = Poly.constant(self.ring, 1) % m
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            e >>= 1
            if e:
                base = (base * base) % m
        return result

    def change_ring(self, R) -> Poly:
        if R == self.ring:
            return self
        return Poly._raw(R, [R.coerce(c) for c in self.coeffs])

    def map_coeffs(self, fn, R) -> Poly:
        return Poly(R, [fn(c) for c in self.coeffs])

    def reverse(self, n: int | None = None) -> Poly:
        """``x^n * f(1/x)`` with ``n = degree`` by default."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [self.ring.zero] * (n + 1 - len(self.coeffs))
        return Poly._raw(self.ring, list(reversed(cs[: n + 1])))

    # --- structure -----------------------------------------------------------------
    def is_squarefree(self) -> bool:
        if self.is_zero():
            return False
        if self.degree < 1:
            return True
        d = self.derivative()
        if d.is_zero():
            return False
        return self.gcd(d).degree == 0

    def sqrt(self):
        """A polynomial ``r`` with ``r*r == self`` (leading coefficient from ``lc.sqrt()``), or None."""
        if self.is_zero():
            return self
        if self.degree % 2:
            return None
        m = self.degree // 2
        top = self.lc.sqrt()
        if top is None:
            return None
        two_top_inv = (top + top).inverse()
        r = [self.ring.zero] * (m + 1)
        r[m] = top
        for k in range(1, m + 1):
            # coefficient of x^(2m-k) in r^2 involves r[m-k] linearly
            s = self.coeffs[2 * m - k]
            for i in range(m - k + 1, m):
                j = 2 * m - k - i
                if m - k < j <= m:
                    s = s - r[i] * r[j]
            r[m - k] = s * two_top_inv
        root = Poly._raw(self.ring, r)
        return root if root * root == self else None

    def roots(self) -> list:
        return poly_roots(self)


def poly_roots(f: Poly) -> list:
    """All roots of ``f`` in its coefficient field, with multiplicity, sorted by key."""
    if f.is_zero():
        raise PreconditionError("the zero polynomial has every element as a root")
    R = f.ring
    if isinstance(R, (PrimeField, ExtensionField)):
        distinct = _finite_field_roots(f)
    elif isinstance(R, RationalField):
        distinct = _rational_roots(f)
    else:
        raise UnsupportedRing(f"root finding is not supported over {R.descriptor}")
    out = []
    for r in distinct:
        lin = Poly._raw(R, [-r, R.one])
        g = f
        while True:
            q, rem = divmod(g, lin)
            if not rem.is_zero():
                break
            out.append(r)
            g = q
    out.sort(key=lambda e: e.key)
    return out


def _finite_field_roots(f: Poly) -> list:
    R = f.ring
    if f.degree < 1:
        return []
    f = f.monic()
    x = Poly.x(R)
    g = f.gcd(x.powmod(R.order, f) - x)
    return _split_linear(g, random.Random(f.degree * 7919 + R.order))


def _split_linear(g: Poly, rng) -> list:
    # g: monic, squarefree, product of distinct linear factors (Cantor-Zassenhaus)
    if g.degree < 1:
        return []
    if g.degree == 1:
        return [-g.coeffs[0]]
    R = g.ring
    half = (R.order - 1) // 2
    while True:
        a = R.random_element(rng)
        h = Poly._raw(R, [a, R.one]).powmod(half, g) - 1
        d = g.gcd(h)
        if 0 < d.degree < g.degree:
            return _split_linear(d, rng) + _split_linear(g // d, rng)


def _rational_roots(f: Poly) -> list:
    den = lcm(*(c.v.denominator for c in f.coeffs))
    ints = [int(c.v * den) for c in f.coeffs]
    roots = []
    while ints and ints[0] == 0:
        ints.pop(0)
        if not roots:
            roots.append(f.ring.zero)
    if len(ints) <= 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    for p in divisors(a0):
        for q in divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand.denominator != q:
                    continue
                if sum(c * cand**i for i, c in enumerate(ints)) == 0:
                    e = f.ring(cand)
                    if e not in roots:
                        roots.append(e)
    return roots
