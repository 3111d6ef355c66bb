"""Coefficient rings: Q, F_p, F_{p^k}, Z/n, and the shared element type.

Every ring object does arithmetic on *payloads* (Fraction, int, tuple of
ints, ...) kept in canonical form, and :class:`RingElem` wraps a payload
together with its ring.  Because payloads are canonical, ``==`` on elements
is plain structural equality.

Rings compare equal when their parameters agree, so two independently built
``GF(5)`` objects are interchangeable.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from functools import cached_property, lru_cache

from sympy import factorint, isprime

from ..errors import DescriptorMismatch, NotAUnit, PreconditionError, UnsupportedRing


class RingElem:
    """An element of one of the supported rings (immutable)."""

    __slots__ = ("ring", "v")

    def __init__(self, ring, v):
        self.ring = ring
        self.v = v

    def _operands(self, other):
        if isinstance(other, RingElem):
            R = self.ring
            if other.ring is R or other.ring == R:
                return R, self.v, other.v
            R = common_ring(R, other.ring)
            return R, R.coerce(self).v, R.coerce(other).v
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring, self.v, self.ring(other).v
        return None

    def __add__(self, other):
        ops = self._operands(other)
        if ops is None:
            return NotImplemented
        R, a, b = ops
        return RingElem(R, R._add(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        ops = self._operands(other)
        if ops is None:
            return NotImplemented
        R, a, b = ops
        return RingElem(R, R._sub(a, b))

    def __rsub__(self, other):
        ops = self._operands(other)
        if ops is None:
            return NotImplemented
        R, a, b = ops
        return RingElem(R, R._sub(b, a))

    def __mul__(self, other):
        ops = self._operands(other)
        if ops is None:
            return NotImplemented
        R, a, b = ops
        return RingElem(R, R._mul(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        ops = self._operands(other)
        if ops is None:
            return NotImplemented
        R, a, b = ops
        return RingElem(R, R._mul(a, R._inv(b)))

    def __rtruediv__(self, other):
        ops = self._operands(other)
        if ops is None:
            return NotImplemented
        R, a, b = ops
        return RingElem(R, R._mul(b, R._inv(a)))

    def __neg__(self):
        return RingElem(self.ring, self.ring._neg(self.v))

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        R = self.ring
        base = self.v
        if n < 0:
            base, n = R._inv(base), -n
        return RingElem(R, R._pow(base, n))

    def __eq__(self, other):
        if isinstance(other, RingElem):
            if other.ring is self.ring or other.ring == self.ring:
                return self.v == other.v
            try:
                R = common_ring(self.ring, other.ring)
            except DescriptorMismatch:
                return False
            return R.coerce(self).v == R.coerce(other).v
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self.v == self.ring(other).v
            except NotAUnit:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.v))

    def __bool__(self):
        return not self.ring._is_zero(self.v)

    def is_zero(self) -> bool:
        return self.ring._is_zero(self.v)

    def is_unit(self) -> bool:
        return self.ring._is_unit(self.v)

    def inverse(self) -> RingElem:
        return RingElem(self.ring, self.ring._inv(self.v))

    def sqrt(self):
        """A square root in the same ring, or None."""
        return self.ring.sqrt(self)

    def is_square(self):
        """``(True, w)`` with ``w*w == self``, or ``(False, None)``."""
        w = self.ring.sqrt(self)
        return (w is not None), w

    @property
    def key(self):
        """Deterministic sort key (used to order roots and pick representatives)."""
        return self.ring._key(self.v)

    def __str__(self):
        return self.ring._fmt(self.v)

    def __repr__(self):
        return f"{self.ring.descriptor}({self.ring._fmt(self.v)})"

    def __int__(self):
        if isinstance(self.v, int):
            return self.v
        if isinstance(self.v, Fraction) and self.v.denominator == 1:
            return self.v.numerator
        raise TypeError(f"{self!r} is not an integer")


def common_ring(A, B):
    if A.can_coerce(B):
        return A
    if B.can_coerce(A):
        return B
    raise DescriptorMismatch(f"incompatible rings {A.descriptor} and {B.descriptor}")


class Ring:
    """Abstract coefficient ring.  Subclasses implement the ``_op`` payload methods."""

    is_field = True
    is_finite = False
    characteristic = 0
    order = None

    # --- element construction -------------------------------------------------
    def __call__(self, x) -> RingElem:
        if isinstance(x, RingElem):
            return self.coerce(x)
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(x, int):
            return RingElem(self, self._from_int(x))
        if isinstance(x, Fraction):
            return RingElem(self, self._from_int(x.numerator)) / RingElem(self, self._from_int(x.denominator))
        if isinstance(x, str):
            from .serialize import parse_elem

            return parse_elem(self, x)
        raise TypeError(f"cannot convert {type(x).__name__} into {self.descriptor}")

    def coerce(self, x: RingElem) -> RingElem:
        if x.ring is self or x.ring == self:
            return x if x.ring is self else RingElem(self, x.v)
        v = self._embed(x)
        if v is None:
            raise DescriptorMismatch(f"cannot coerce {x!r} into {self.descriptor}")
        return RingElem(self, v)

    def can_coerce(self, other) -> bool:
        return other == self or self._embeds(other)

    def _embeds(self, other) -> bool:
        return False

    def _embed(self, x):
        return None

    @cached_property
    def zero(self) -> RingElem:
        return RingElem(self, self._from_int(0))

    @cached_property
    def one(self) -> RingElem:
        return RingElem(self, self._from_int(1))

    def generators(self) -> dict:
        return {}

    def elements(self):
        raise UnsupportedRing(f"{self.descriptor} is infinite")

    def random_element(self, rng: random.Random) -> RingElem:
        raise NotImplementedError

    def sqrt(self, a: RingElem):
        raise UnsupportedRing(f"square roots are not supported over {self.descriptor}")

    # --- payload arithmetic defaults ---------------------------------------------
    def _pow(self, a, n: int):
        result = self._from_int(1)
        while n:
            if n & 1:
                result = self._mul(result, a)
            n >>= 1
            if n:
                a = self._mul(a, a)
        return result

    def _is_unit(self, a) -> bool:
        return not self._is_zero(a)

    # --- identity ---------------------------------------------------------------
    def _params(self):
        return ()

    def __eq__(self, other):
        return type(self) is type(other) and self._params() == other._params()

    def __hash__(self):
        return hash((type(self).__name__, self._params()))

    @property
    def descriptor(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"<ring {self.descriptor}>"


# ---------------------------------------------------------------------------
# Q
# ---------------------------------------------------------------------------


class RationalField(Ring):
    descriptor = "q"

    def _from_int(self, n):
        return Fraction(n)

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _inv(self, a):
        if not a:
            raise NotAUnit("division by zero in Q")
        return 1 / a

    def _is_zero(self, a):
        return a == 0

    def _key(self, a):
        return a

    def _fmt(self, a):
        return str(a)

    def random_element(self, rng):
        return RingElem(self, Fraction(rng.randint(-30, 30), rng.randint(1, 12)))

    def sqrt(self, a):
        v = a.v
        if v < 0:
            return None
        n, d = math.isqrt(v.numerator), math.isqrt(v.denominator)
        if n * n != v.numerator or d * d != v.denominator:
            return None
        return RingElem(self, Fraction(n, d))


QQ = RationalField()


# ---------------------------------------------------------------------------
# Finite fields
# ---------------------------------------------------------------------------


class _FiniteField(Ring):
    is_finite = True

    @cached_property
    def _nonresidue(self):
        half = (self.order - 1) // 2
        minus_one = self._neg(self._from_int(1))
        for x in self.elements():
            if self._pow(x.v, half) == minus_one:
                return x
        raise AssertionError("finite field of odd order without a non-residue")

    def sqrt(self, a):
        """Tonelli-Shanks; returns the root with the smaller sort key."""
        if a.is_zero():
            return self.zero
        q = self.order
        if a ** ((q - 1) // 2) != self.one:
            return None
        s, m = 0, q - 1
        while m % 2 == 0:
            m //= 2
            s += 1
        c = self._nonresidue ** m
        x = a ** ((m + 1) // 2)
        t = a ** m
        while t != self.one:
            i, t2 = 0, t
            while t2 != self.one:
                t2 = t2 * t2
                i += 1
            b = c ** (2 ** (s - i - 1))
            x = x * b
            c = b * b
            t = t * c
            s = i
        y = -x
        return x if x.key <= y.key else y


class PrimeField(_FiniteField):
    def __init__(self, p: int):
        if p < 3 or not isprime(p):
            raise PreconditionError(f"F_p needs an odd prime, got {p}")
        self.p = p
        self.characteristic = p
        self.order = p

    def _params(self):
        return (self.p,)

    @property
    def descriptor(self):
        return f"fp:{self.p}"

    def _from_int(self, n):
        return n % self.p

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _neg(self, a):
        return -a % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _inv(self, a):
        if not a:
            raise NotAUnit(f"division by zero in F_{self.p}")
        return pow(a, -1, self.p)

    def _pow(self, a, n):
        return pow(a, n, self.p)

    def _is_zero(self, a):
        return a == 0

    def _key(self, a):
        return a

    def _fmt(self, a):
        return str(a)

    def elements(self):
        return (RingElem(self, i) for i in range(self.p))

    def random_element(self, rng):
        return RingElem(self, rng.randrange(self.p))


# int-list polynomials over F_p (ascending), used only for moduli of F_{p^k}


def _ip_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _ip_mod(f, g, p):
    f = [c % p for c in f]
    _ip_trim(f)
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv % p
        shift = len(f) - 1 - dg
        for i, gc in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gc) % p
        _ip_trim(f)
    return f


def _ip_mulmod(f, g, m, p):
    if not f or not g:
        return []
    prod = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                prod[i + j] += a * b
    return _ip_mod(prod, m, p)


def _ip_powmod(f, e, m, p):
    result = [1]
    base = _ip_mod(list(f), m, p)
    while e:
        if e & 1:
            result = _ip_mulmod(result, base, m, p)
        e >>= 1
        if e:
            base = _ip_mulmod(base, base, m, p)
    return result


def _ip_gcd(f, g, p):
    f, g = _ip_trim([c % p for c in f]), _ip_trim([c % p for c in g])
    while g:
        f, g = g, _ip_mod(f, g, p)
    return f


def _ip_sub(f, g, p):
    n = max(len(f), len(g))
    out = [((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)]
    return _ip_trim(out)


def is_irreducible_mod_p(f, p: int) -> bool:
    """Rabin's irreducibility test for a monic int-list polynomial over F_p."""
    f = _ip_trim([c % p for c in f])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    # x^(p^k) == x mod f
    xp = x
    for _ in range(k):
        xp = _ip_powmod(xp, p, f, p)
    if _ip_sub(xp, x, p):
        return False
    for r in factorint(k):
        xq = x
        for _ in range(k // r):
            xq = _ip_powmod(xq, p, f, p)
        g = _ip_gcd(f, _ip_sub(xq, x, p), p)
        if len(g) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, k: int) -> tuple:
    """Least monic irreducible of degree k over F_p, as ascending coefficients.

    Candidates are ordered by the integer ``sum(c_i * p**i)`` over the
    non-leading coefficients, i.e. lexicographically from the x^(k-1)
    coefficient downward.
    """
    for n in range(p**k):
        coeffs = [(n // p**i) % p for i in range(k)] + [1]
        if is_irreducible_mod_p(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


class ExtensionField(_FiniteField):
    """F_p[z]/(modulus); payloads are k-tuples of residues, ascending in z."""

    gen_name = "z"

    def __init__(self, p: int, k: int, modulus=None):
        if p < 3 or not isprime(p):
            raise PreconditionError(f"F_(p^k) needs an odd prime, got {p}")
        if k < 1:
            raise PreconditionError("extension degree must be >= 1")
        if modulus is None:
            modulus = least_irreducible(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise PreconditionError(f"modulus must be monic of degree {k}")
        if not is_irreducible_mod_p(list(modulus), p):
            raise PreconditionError(f"modulus {modulus} is reducible over F_{p}")
        self.p, self.k, self.modulus = p, k, modulus
        self.characteristic = p
        self.order = p**k
        self._low = modulus[:k]

    def _params(self):
        return (self.p, self.k, self.modulus)

    @property
    def descriptor(self):
        return f"fpk:{self.p}:{self.k}:{','.join(map(str, self.modulus))}"

    def _embeds(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def _embed(self, x):
        if self._embeds(x.ring):
            return (x.v,) + (0,) * (self.k - 1)
        return None

    def _from_int(self, n):
        return (n % self.p,) + (0,) * (self.k - 1)

    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def _mul(self, a, b):
        p, k, low = self.p, self.k, self._low
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % p
            if c:
                base = d - k
                for i in range(k):
                    prod[base + i] -= c * low[i]
        return tuple(c % p for c in prod[:k])

    def _inv(self, a):
        if not any(a):
            raise NotAUnit("division by zero in a finite field")
        return self._pow(a, self.order - 2)

    def _is_zero(self, a):
        return not any(a)

    def _key(self, a):
        p = self.p
        return sum(c * p**i for i, c in enumerate(a))

    def _fmt(self, a):
        from .serialize import format_terms

        return format_terms([str(c) for c in a], self.gen_name)

    @cached_property
    def gen(self) -> RingElem:
        if self.k == 1:
            return RingElem(self, (-self.modulus[0] % self.p,))
        return RingElem(self, (0, 1) + (0,) * (self.k - 2))

    def generators(self):
        return {self.gen_name: self.gen}

    def elements(self):
        p, k = self.p, self.k
        for n in range(self.order):
            yield RingElem(self, tuple((n // p**i) % p for i in range(k)))

    def random_element(self, rng):
        return RingElem(self, tuple(rng.randrange(self.p) for _ in range(self.k)))

    def frobenius(self, a: RingElem, times: int = 1) -> RingElem:
        return a ** (self.p**times)

    def in_prime_field(self, a: RingElem) -> bool:
        return not any(a.v[1:])

    def to_prime_field(self, a: RingElem) -> RingElem:
        if not self.in_prime_field(a):
            raise DescriptorMismatch(f"{a} does not lie in F_{self.p}")
        return RingElem(GF(self.p), a.v[0])

    def in_subfield(self, a: RingElem, d: int) -> bool:
        """True iff ``a`` lies in the subfield F_{p^d}."""
        return a ** (self.p**d) == a


# ---------------------------------------------------------------------------
# Z/n
# ---------------------------------------------------------------------------


class ResidueRing(Ring):
    """Z/n for odd n >= 3 (n need not be squarefree)."""

    is_field = False
    is_finite = True

    def __init__(self, n: int):
        if n < 3 or n % 2 == 0:
            raise PreconditionError(f"Z/n requires odd n >= 3, got {n}")
        self.n = n
        self.order = n
        self.characteristic = n

    def _params(self):
        return (self.n,)

    @property
    def descriptor(self):
        return f"z:{self.n}"

    @cached_property
    def prime_powers(self) -> tuple:
        """``((p, p**e), ...)`` over the prime factorization of n."""
        return tuple((p, p**e) for p, e in sorted(factorint(self.n).items()))

    def _from_int(self, n):
        return n % self.n

    def _add(self, a, b):
        return (a + b) % self.n

    def _sub(self, a, b):
        return (a - b) % self.n

    def _neg(self, a):
        return -a % self.n

    def _mul(self, a, b):
        return a * b % self.n

    def _inv(self, a):
        if math.gcd(a, self.n) != 1:
            raise NotAUnit(f"{a} is not a unit modulo {self.n}")
        return pow(a, -1, self.n)

    def _pow(self, a, n):
        return pow(a, n, self.n)

    def _is_zero(self, a):
        return a == 0

    def _is_unit(self, a):
        return math.gcd(a, self.n) == 1

    def _key(self, a):
        return a

    def _fmt(self, a):
        return str(a)

    def elements(self):
        return (RingElem(self, i) for i in range(self.n))

    def random_element(self, rng):
        return RingElem(self, rng.randrange(self.n))

    def units(self):
        return [RingElem(self, i) for i in range(1, self.n) if math.gcd(i, self.n) == 1]

    def crt(self, residues) -> RingElem:
        """Combine one residue per prime-power component into an element of Z/n."""
        x, m = 0, 1
        for (_, q), r in zip(self.prime_powers, residues):
            # x = x mod m, x = r mod q
            t = (r - x) * pow(m, -1, q) % q
            x += m * t
            m *= q
        return RingElem(self, x % self.n)


# ---------------------------------------------------------------------------
# factories
# ---------------------------------------------------------------------------


def GF(p: int, k: int = 1, modulus=None):
    """F_p (k == 1 and no modulus) or F_{p^k}; ``modulus`` lists ascending coefficients."""
    return _gf(p, k, None if modulus is None else tuple(modulus))


@lru_cache(maxsize=None)
def _gf(p, k, modulus):
    if k == 1 and modulus is None:
        return PrimeField(p)
    return ExtensionField(p, k, modulus)


@lru_cache(maxsize=None)
def Zmod(n: int):
    return ResidueRing(n)


def is_prime_field(R) -> bool:
    return isinstance(R, PrimeField)


def prime_of(R) -> int:
    if isinstance(R, (PrimeField, ExtensionField)):
        return R.p
    raise UnsupportedRing(f"{R.descriptor} is not a finite field")


def check_odd_characteristic(R):
    if R.characteristic == 2:
        raise PreconditionError("characteristic 2 is not supported")


def element_tuples(R, k: int):
    """All ordered k-tuples of pairwise distinct elements of a finite ring."""
    return itertools.permutations(list(R.elements()), k)

