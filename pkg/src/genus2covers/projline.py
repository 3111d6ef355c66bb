"""Points of P^1 and Moebius transformations over fields and Z/n.

A point ``[u:v]`` is a pair generating the unit ideal, taken modulo units.
Canonical representatives:

* ``v`` a unit  -> ``[u/v : 1]``;
* else ``u`` a unit -> ``[1 : v/u]``;
* else (only over Z/n with n composite) normalize separately in every
  prime-power component Z/p^e by the two rules above and glue by CRT.

A :class:`MoebiusMap` is an invertible matrix ``[[a, b], [c, d]]`` acting by
``t -> (a t + b) / (c t + d)`` on column vectors ``(u, v)``, modulo units.
The canonical representative scales the first unit entry (row-major) to 1,
falling back to the same per-component rule when no entry is a unit.
Both rules depend only on the class, so equality is structural.
"""

from __future__ import annotations

from math import gcd, lcm

from .errors import DescentError, DescriptorMismatch, PreconditionError, UnsupportedRing
from .exactring import GF, Poly, RingElem, poly_roots
from .exactring.rings import ExtensionField, PrimeField, RationalField, ResidueRing


def _local_components(R: ResidueRing, values):
    return [[x.v % q for x in values] for _, q in R.prime_powers]


class ProjPoint:
    __slots__ = ("u", "v")

    def __init__(self, u: RingElem, v: RingElem):
        if u.ring != v.ring:
            raise DescriptorMismatch("point coordinates from different rings")
        self.u, self.v = _normalize_point(u, v)

    @classmethod
    def affine(cls, x: RingElem) -> ProjPoint:
        return cls(x, x.ring.one)

    @classmethod
    def infinity(cls, ring) -> ProjPoint:
        return cls(ring.one, ring.zero)

    @classmethod
    def parse(cls, ring, text: str) -> ProjPoint:
        text = text.strip()
        if text in ("inf", "oo", "infinity"):
            return cls.infinity(ring)
        return cls.affine(ring(text))

    @property
    def ring(self):
        return self.u.ring

    def is_infinity(self) -> bool:
        return self.v.is_zero()

    def value(self):
        """The affine coordinate ``u/v``, or None at infinity (or when v is not a unit)."""
        return self.u if self.v == self.ring.one else None

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.u == other.u and self.v == other.v

    def __hash__(self):
        return hash((self.u, self.v))

    def __repr__(self):
        return f"[{self.u}:{self.v}]"

    def __str__(self):
        if self.v == self.ring.one:
            return str(self.u)
        if self.v.is_zero():
            return "inf"
        return f"[{self.u}:{self.v}]"


def _normalize_point(u, v):
    R = u.ring
    if v.is_unit():
        return u / v, R.one
    if u.is_unit():
        return R.one, v / u
    if isinstance(R, ResidueRing):
        if gcd(u.v, v.v, R.n) != 1:
            raise PreconditionError(f"({u}, {v}) does not generate the unit ideal of Z/{R.n}")
        us, vs = [], []
        for (p, q), (uu, vv) in zip(R.prime_powers, _local_components(R, (u, v))):
            if vv % p:
                us.append(uu * pow(vv, -1, q) % q)
                vs.append(1)
            else:
                us.append(1)
                vs.append(vv * pow(uu, -1, q) % q)
        return R.crt(us), R.crt(vs)
    raise PreconditionError("[0:0] is not a point of P^1")


def _det(p: ProjPoint, q: ProjPoint) -> RingElem:
    return p.u * q.v - q.u * p.v


def _offending_prime(d: RingElem):
    R = d.ring
    if isinstance(R, ResidueRing):
        g = gcd(d.v, R.n)
        return next(p for p, _ in R.prime_powers if g % p == 0)
    return None


def check_distinct(points) -> None:
    """Raise unless the points are pairwise distinct modulo every prime."""
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            d = _det(points[i], points[j])
            if not d.is_unit():
                p = _offending_prime(d)
                where = f" modulo {p}" if p is not None else ""
                raise PreconditionError(f"points {points[i]} and {points[j]} coincide{where}")


class MoebiusMap:
    __slots__ = ("m",)

    def __init__(self, a, b, c, d):
        R = a.ring
        det = a * d - b * c
        if not det.is_unit():
            raise PreconditionError(f"matrix [[{a},{b}],[{c},{d}]] is not invertible over {R.descriptor}")
        self.m = _normalize_matrix((a, b, c, d))

    @classmethod
    def identity(cls, ring) -> MoebiusMap:
        return cls(ring.one, ring.zero, ring.zero, ring.one)

    @property
    def ring(self):
        return self.m[0].ring

    @property
    def entries(self):
        return self.m

    @property
    def lower_left(self) -> RingElem:
        return self.m[2]

    def det(self) -> RingElem:
        a, b, c, d = self.m
        return a * d - b * c

    def __call__(self, x):
        """Apply to a :class:`ProjPoint` (or an affine coordinate)."""
        if not isinstance(x, ProjPoint):
            x = ProjPoint.affine(self.ring(x) if not isinstance(x, RingElem) else x)
        a, b, c, d = self.m
        return ProjPoint(a * x.u + b * x.v, c * x.u + d * x.v)

    apply = __call__

    def inverse(self) -> MoebiusMap:
        a, b, c, d = self.m
        return MoebiusMap(d, -b, -c, a)

    def __mul__(self, other: MoebiusMap) -> MoebiusMap:
        """Composition: ``(g * h)(x) == g(h(x))``."""
        a, b, c, d = self.m
        e, f, g, h = other.m
        return MoebiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    compose = __mul__

    def fixes_infinity(self) -> bool:
        return self.m[2].is_zero()

    def image_of_infinity(self) -> ProjPoint:
        return ProjPoint(self.m[0], self.m[2])

    def change_ring(self, R) -> MoebiusMap:
        return MoebiusMap(*(R.coerce(x) for x in self.m))

    def __eq__(self, other):
        return isinstance(other, MoebiusMap) and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def matrix_str(self) -> str:
        a, b, c, d = self.m
        return f"[[{a}, {b}], [{c}, {d}]]"

    def rational_form(self, var: str = "t") -> str:
        from .exactring.serialize import format_terms

        a, b, c, d = self.m
        num = format_terms([str(b), str(a)], var)
        den = format_terms([str(d), str(c)], var)
        if den == "1":
            return num
        return f"({num})/({den})"

    def __repr__(self):
        return f"MoebiusMap({self.matrix_str()} over {self.ring.descriptor})"


def _normalize_matrix(entries):
    R = entries[0].ring
    for x in entries:
        if x.is_unit():
            inv = x.inverse()
            return tuple(y * inv for y in entries)
    if isinstance(R, ResidueRing):
        comps = []
        for (p, q), vals in zip(R.prime_powers, _local_components(R, entries)):
            k = next(i for i, x in enumerate(vals) if x % p)
            inv = pow(vals[k], -1, q)
            comps.append([x * inv % q for x in vals])
        return tuple(R.crt([c[i] for c in comps]) for i in range(4))
    raise PreconditionError("zero matrix")


def _to_standard(points):
    # matrix sending the three points to the frame [1:0], [0:1], [1:1]
    p1, p2, p3 = points
    a1, b1, a2, b2 = p1.u, p1.v, p2.u, p2.v
    dinv = (a1 * b2 - a2 * b1).inverse()
    # inverse of the column matrix [[a1, a2], [b1, b2]]
    i11, i12, i21, i22 = b2 * dinv, -a2 * dinv, -b1 * dinv, a1 * dinv
    a = i11 * p3.u + i12 * p3.v
    b = i21 * p3.u + i22 * p3.v
    ai, bi = a.inverse(), b.inverse()
    return (i11 * ai, i12 * ai, i21 * bi, i22 * bi)


def moebius_from_triples(src, dst) -> MoebiusMap:
    """The unique Moebius class sending ``src[i]`` to ``dst[i]`` for i = 0, 1, 2.

    Points may be given as :class:`ProjPoint` or as affine ring elements.
    """
    src = [x if isinstance(x, ProjPoint) else ProjPoint.affine(x) for x in src]
    dst = [x if isinstance(x, ProjPoint) else ProjPoint.affine(x) for x in dst]
    if len(src) != 3 or len(dst) != 3:
        raise PreconditionError("need exactly three source and three target points")
    check_distinct(src)
    check_distinct(dst)
    s11, s12, s21, s22 = _to_standard(src)
    t11, t12, t21, t22 = _to_standard(dst)
    # invert the target frame matrix (det is a unit) and compose
    dinv = (t11 * t22 - t12 * t21).inverse()
    u11, u12, u21, u22 = t22 * dinv, -t12 * dinv, -t21 * dinv, t11 * dinv
    return MoebiusMap(
        u11 * s11 + u12 * s21,
        u11 * s12 + u12 * s22,
        u21 * s11 + u22 * s21,
        u21 * s12 + u22 * s22,
    )


# ---------------------------------------------------------------------------
# cubics and descent
# ---------------------------------------------------------------------------

MAX_SPLITTING_DEGREE = 6


def splitting_degree(c: Poly) -> int:
    """Degree of the splitting field of a squarefree cubic over F_p (1, 2 or 3)."""
    n = len(set(poly_roots(c)))
    return {3: 1, 1: 2, 0: 3}[n]


def cubic_roots(c: Poly, field=None):
    """Roots of a squarefree cubic in ``field`` (default: its splitting field), sorted by key."""
    _check_cubic(c)
    R = c.ring
    if isinstance(R, RationalField):
        roots = poly_roots(c)
        if len(roots) != 3:
            raise UnsupportedRing(f"{c} does not split over Q")
        return R, roots
    if not isinstance(R, PrimeField):
        raise UnsupportedRing("cubic descent is implemented over F_p and Q")
    L = field or GF(R.p, splitting_degree(c))
    roots = poly_roots(c.change_ring(L))
    if len(roots) != 3:
        raise PreconditionError(f"{c} does not split over {L.descriptor}")
    return L, roots


def _check_cubic(c: Poly):
    if c.degree != 3:
        raise PreconditionError(f"expected a cubic, got degree {c.degree}")
    if not c.is_squarefree():
        raise PreconditionError(f"{c} is not squarefree")


def moebius_from_cubics(c: Poly, c2: Poly, matching) -> MoebiusMap:
    """Moebius map over the base field sending the roots of ``c`` to those of ``c2``.

    Roots are listed as in :func:`cubic_roots` (splitting field of both
    cubics, sorted by key); ``matching[i] = j`` sends root i of ``c`` to
    root j of ``c2`` (0-based).  Raises :class:`DescentError` when the map is
    not defined over the base field.
    """
    _check_cubic(c)
    _check_cubic(c2)
    if c.ring != c2.ring:
        raise DescriptorMismatch("cubics over different fields")
    if sorted(matching) != [0, 1, 2]:
        raise PreconditionError(f"matching {matching} is not a permutation of 0, 1, 2")
    R = c.ring
    if isinstance(R, RationalField):
        _, r1 = cubic_roots(c)
        _, r2 = cubic_roots(c2)
        return moebius_from_triples(r1, [r2[j] for j in matching])
    if not isinstance(R, PrimeField):
        raise UnsupportedRing("cubic descent is implemented over F_p and Q")
    k = lcm(splitting_degree(c), splitting_degree(c2))
    assert k <= MAX_SPLITTING_DEGREE
    L = GF(R.p, k)
    _, r1 = cubic_roots(c, L)
    _, r2 = cubic_roots(c2, L)
    g = moebius_from_triples(r1, [r2[j] for j in matching])
    if isinstance(L, ExtensionField):
        if not all(L.in_prime_field(x) for x in g.entries):
            raise DescentError(f"matching {tuple(matching)} is not Galois-equivariant; gamma is not defined over F_{R.p}")
        return MoebiusMap(*(L.to_prime_field(x) for x in g.entries))
    return g


def frobenius_matching(c: Poly, c2: Poly, matching) -> tuple:
    """The matching conjugated by x -> x^p (as a permutation of sorted roots)."""
    R = c.ring
    k = lcm(splitting_degree(c), splitting_degree(c2))
    L = GF(R.p, k)
    _, r1 = cubic_roots(c, L)
    _, r2 = cubic_roots(c2, L)
    frob1 = [r1.index(r ** R.p) for r in r1]
    frob2 = [r2.index(r ** R.p) for r in r2]
    out = [None] * 3
    for i in range(3):
        out[frob1[i]] = frob2[matching[i]]
    return tuple(out)
