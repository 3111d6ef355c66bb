"""Elliptic curves with fully split 2-torsion and isomorphisms of their 2-torsion."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DescriptorMismatch, PreconditionError
from .exactring import Poly, RingElem

#: The origin 0_E (point at infinity) in lists of affine points.
ORIGIN = None


@dataclass(frozen=True)
class EllCurve:
    """``y^2 = (x - e1)(x - e2)(x - e3)`` with distinct ``e_i`` in a field of odd characteristic."""

    e: tuple

    def __post_init__(self):
        e = tuple(self.e)
        if len(e) != 3:
            raise PreconditionError("an elliptic curve needs three roots e1, e2, e3")
        R = e[0].ring
        if any(x.ring != R for x in e):
            raise DescriptorMismatch("roots from different rings")
        if not R.is_field:
            raise PreconditionError(f"curves need a field, not {R.descriptor}")
        if R.characteristic == 2:
            raise PreconditionError("characteristic 2 is not supported")
        if e[0] == e[1] or e[0] == e[2] or e[1] == e[2]:
            raise PreconditionError(f"roots {', '.join(map(str, e))} are not distinct (singular curve)")
        object.__setattr__(self, "e", e)

    @classmethod
    def from_values(cls, ring, values) -> EllCurve:
        return cls(tuple(ring(v) if not isinstance(v, RingElem) else ring.coerce(v) for v in values))

    @property
    def ring(self):
        return self.e[0].ring

    @property
    def poly(self) -> Poly:
        """The cubic ``P_E(x) = prod (x - e_i)``."""
        return Poly.from_roots(self.ring, self.e)

    def rhs(self, x):
        """``P_E(x)`` evaluated at any element coercible with the roots."""
        e1, e2, e3 = self.e
        return (x - e1) * (x - e2) * (x - e3)

    def is_on_curve(self, pt) -> bool:
        if pt is ORIGIN:
            return True
        x, y = pt
        return y * y == self.rhs(x)

    def relabel(self, perm) -> EllCurve:
        """Curve with roots listed as ``(e[perm[0]], e[perm[1]], e[perm[2]])`` (0-based)."""
        return EllCurve(tuple(self.e[i] for i in perm))

    def specialize(self, fn) -> EllCurve:
        return EllCurve(tuple(fn(x) for x in self.e))

    def __str__(self):
        return f"y^2 = (x-({self.e[0]}))(x-({self.e[1]}))(x-({self.e[2]})) over {self.ring.descriptor}"


@dataclass(frozen=True)
class TwoTorsionIso:
    """psi: E[2] -> E'[2] with ``psi(e_i, 0) = (e'_sigma(i), 0)``; sigma is 1-based."""

    sigma: tuple

    def __post_init__(self):
        s = tuple(int(i) for i in self.sigma)
        if sorted(s) != [1, 2, 3]:
            raise PreconditionError(f"sigma {s} is not a permutation of 1, 2, 3")
        object.__setattr__(self, "sigma", s)

    @classmethod
    def identity(cls) -> TwoTorsionIso:
        return cls((1, 2, 3))

    @classmethod
    def all(cls):
        return [cls(p) for p in itertools.permutations((1, 2, 3))]

    def __call__(self, i: int) -> int:
        return self.sigma[i - 1]

    def inverse(self) -> TwoTorsionIso:
        inv = [0, 0, 0]
        for i, j in enumerate(self.sigma, start=1):
            inv[j - 1] = i
        return TwoTorsionIso(tuple(inv))

    def __mul__(self, other: TwoTorsionIso) -> TwoTorsionIso:
        """``(self * other)(i) == self(other(i))``."""
        return TwoTorsionIso(tuple(self(other(i)) for i in (1, 2, 3)))

    def __str__(self):
        return ",".join(map(str, self.sigma))


def two_torsion(E: EllCurve) -> list:
    """``[0_E, (e1, 0), (e2, 0), (e3, 0)]``; the origin is :data:`ORIGIN`."""
    z = E.ring.zero
    return [ORIGIN] + [(x, z) for x in E.e]


def j_invariant(E: EllCurve) -> RingElem:
    e1, e2, e3 = E.e
    lam = (e3 - e1) / (e2 - e1)
    num = (lam * lam - lam + 1) ** 3 * 256
    den = lam * lam * (lam - 1) ** 2
    return num / den


def geometric_iso_for_psi(E: EllCurve, Ep: EllCurve, psi: TwoTorsionIso):
    """``(u^2, r)`` when ``x -> u^2 x + r`` carries each ``e_i`` to ``e'_sigma(i)``, else None.

    Such an affine map is the x-part of a geometric isomorphism
    ``(x, y) -> (u^2 x + r, u^3 y)`` restricting to psi; u itself may need a
    quadratic extension, u^2 never does.
    """
    if E.ring != Ep.ring:
        raise DescriptorMismatch("curves over different fields")
    e, ep = E.e, Ep.e
    t1, t2, t3 = (ep[psi(i) - 1] for i in (1, 2, 3))
    u2 = (t1 - t2) / (e[0] - e[1])
    r = t1 - u2 * e[0]
    if u2 * e[2] + r != t3:
        return None
    return u2, r
