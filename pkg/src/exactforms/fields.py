"""Computable fields with exact arithmetic.

Supported field kinds: finite fields GF(p^k), the rationals, and rational
function fields F_p(t).  Every element is a FieldElement wrapping a
canonical payload (int residue, coefficient tuple, Fraction in lowest
terms, or a reduced rational function with monic denominator), so equality
is structural and arithmetic never rounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch, UnsupportedField
from .numtheory import (
    hilbert_symbol_padic,
    hilbert_symbol_real,
    is_prime,
    rational_square_class,
)
from .polynomials import Poly, default_modulus


class FieldElement:
    """An element of a specific field; immutable, structurally comparable."""

    __slots__ = ("field", "val")

    def __init__(self, field: Field, val):
        self.field = field
        self.val = val

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field} vs {self.field}")
            return other
        return self.field.el(other)

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.r_add(self.val, o.val))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.r_neg(self.val))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.r_mul(self.val, o.val))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inv()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def inv(self) -> FieldElement:
        if self.is_zero:
            raise DivisionByZero("inverse of zero")
        return FieldElement(self.field, self.field.r_inv(self.val))

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inv() ** (-e)
        acc, base = self.field.one, self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    @property
    def is_zero(self) -> bool:
        return self.field.r_is_zero(self.val)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.val == other.val
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError, FieldMismatch):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.val))

    def __repr__(self) -> str:
        return self.field.fmt(self.val)


class Field:
    """Abstract base: raw payload arithmetic plus field-level services."""

    char: int
    order: int | None  # None for infinite fields

    # subclasses implement: el, r_add, r_mul, r_neg, r_inv, r_is_zero,
    # is_square, sqrt, square_class, sample, fmt (and elements() if finite)

    @property
    def zero(self) -> FieldElement:
        return self.el(0)

    @property
    def one(self) -> FieldElement:
        return self.el(1)

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def elements(self):
        raise UnsupportedField(f"{self} is not finite")

    def nonzero_elements(self):
        return (x for x in self.elements() if not x.is_zero)


class FiniteField(Field):
    """GF(p^k).  Payloads: int residues for k = 1, coefficient tuples for k > 1."""

    def __init__(self, p: int, k: int = 1, modulus: Poly | None = None):
        if not is_prime(p):
            raise UnsupportedField(f"{p} is not prime")
        if k < 1:
            raise UnsupportedField("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.char = p
        self.order = p**k
        if k == 1:
            self.modulus = None
        else:
            self.modulus = modulus if modulus is not None else default_modulus(p, k)
            if self.modulus.degree != k or not self.modulus.is_irreducible():
                raise UnsupportedField("modulus must be irreducible of degree k")
        self._canonical_nonsquare: FieldElement | None = None

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash(("GF", self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.order})"

    def el(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"{x.field} vs {self}")
            return x
        if self.k == 1:
            if isinstance(x, int):
                return FieldElement(self, x % self.p)
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise DivisionByZero("denominator vanishes in this field")
                return FieldElement(
                    self, x.numerator * pow(x.denominator, -1, self.p) % self.p
                )
        else:
            if isinstance(x, int):
                return FieldElement(self, (x % self.p,) + (0,) * (self.k - 1))
            if isinstance(x, tuple):
                if len(x) != self.k:
                    raise ValueError("wrong tuple length")
                return FieldElement(self, tuple(c % self.p for c in x))
            if isinstance(x, Poly):
                r = x % self.modulus
                cs = list(r.coeffs) + [0] * (self.k - len(r.coeffs))
                return FieldElement(self, tuple(cs))
        raise TypeError(f"cannot coerce {x!r} into {self}")

    # raw ops ----------------------------------------------------------
    def r_add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def r_neg(self, a):
        if self.k == 1:
            return -a % self.p
        return tuple(-x % self.p for x in a)

    def r_mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        prod = Poly(self.p, a) * Poly(self.p, b)
        r = prod % self.modulus
        cs = list(r.coeffs) + [0] * (self.k - len(r.coeffs))
        return tuple(cs)

    def r_inv(self, a):
        if self.k == 1:
            return pow(a, -1, self.p)
        # extended Euclid in F_p[x]
        f, g = Poly(self.p, a), self.modulus
        s0, s1 = Poly.const(self.p, 1), Poly(self.p, ())
        while not g.is_zero:
            q, r = divmod(f, g)
            f, g = g, r
            s0, s1 = s1, s0 - q * s1
        inv = s0.scale(pow(f.lead, -1, self.p))  # f is the gcd, a unit
        r = inv % self.modulus
        return tuple(list(r.coeffs) + [0] * (self.k - len(r.coeffs)))

    def r_is_zero(self, a) -> bool:
        return a == 0 if self.k == 1 else all(c == 0 for c in a)

    def fmt(self, a) -> str:
        if self.k == 1:
            return f"{a}"
        return "(" + Poly(self.p, a).as_str("g") + ")"

    # services -----------------------------------------------------------
    def elements(self):
        if self.k == 1:
            for i in range(self.p):
                yield FieldElement(self, i)
        else:
            for cs in itertools.product(range(self.p), repeat=self.k):
                yield FieldElement(self, cs)

    def element_at(self, i: int) -> FieldElement:
        if self.k == 1:
            return FieldElement(self, i % self.order)
        cs = []
        i %= self.order
        for _ in range(self.k):
            cs.append(i % self.p)
            i //= self.p
        return FieldElement(self, tuple(cs))

    def sample(self, rng, height: int = 0) -> FieldElement:
        return self.element_at(rng.randrange(self.order))

    def is_square(self, a: FieldElement) -> bool:
        a = self.el(a)
        if a.is_zero or self.p == 2:
            return True  # Frobenius is bijective in characteristic 2
        return (a ** ((self.order - 1) // 2)) == self.one

    def sqrt(self, a: FieldElement) -> FieldElement | None:
        a = self.el(a)
        if a.is_zero:
            return a
        if self.p == 2:
            return a ** (self.order // 2)  # a^(2^(k-1)) squares back to a
        if not self.is_square(a):
            return None
        q = self.order
        if q % 4 == 3:
            return a ** ((q + 1) // 4)
        # Tonelli-Shanks with a scanned nonsquare
        m2, s = q - 1, 0
        while m2 % 2 == 0:
            m2 //= 2
            s += 1
        z = next(x for x in self.nonzero_elements() if not self.is_square(x))
        m, c, t, r = s, z**m2, a**m2, a ** ((m2 + 1) // 2)
        while t != self.one:
            t2, i = t, 0
            while t2 != self.one:
                t2 = t2 * t2
                i += 1
            b = c ** (1 << (m - i - 1))
            m, c = i, b * b
            t, r = t * c, r * b
        return r

    def square_class(self, a: FieldElement) -> FieldElement:
        a = self.el(a)
        if a.is_zero:
            return a
        if self.is_square(a):
            return self.one
        if self._canonical_nonsquare is None:
            self._canonical_nonsquare = next(
                x for x in self.nonzero_elements() if not self.is_square(x)
            )
        return self._canonical_nonsquare

    def absolute_trace(self, a: FieldElement) -> FieldElement:
        """Trace down to the prime field, returned as a GF(p) element."""
        a = self.el(a)
        acc = a
        frob = a
        for _ in range(self.k - 1):
            frob = frob**self.p
            acc = acc + frob
        prime = FiniteField(self.p)
        if self.k == 1:
            return prime.el(a.val)
        assert all(c == 0 for c in acc.val[1:]), "trace must land in F_p"
        return prime.el(acc.val[0])

    def artin_schreier_solve(self, a: FieldElement) -> FieldElement | None:
        """x with x^2 + x = a over GF(2^k), or None; scan is fine at our sizes."""
        assert self.p == 2
        for x in self.elements():
            if x * x + x == a:
                return x
        return None


class RationalField(Field):
    """The rational numbers; payloads are Fractions in lowest terms."""

    char = 0
    order = None

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def el(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"{x.field} vs {self}")
            return x
        if isinstance(x, (int, Fraction)):
            return FieldElement(self, Fraction(x))
        if isinstance(x, str):
            return FieldElement(self, Fraction(x))
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def r_add(self, a, b):
        return a + b

    def r_neg(self, a):
        return -a

    def r_mul(self, a, b):
        return a * b

    def r_inv(self, a):
        return 1 / a

    def r_is_zero(self, a):
        return a == 0

    def fmt(self, a: Fraction) -> str:
        return str(a)

    def sample(self, rng, height: int = 10) -> FieldElement:
        num = rng.randint(-height, height)
        den = rng.randint(1, height)
        return self.el(Fraction(num, den))

    def is_square(self, a: FieldElement) -> bool:
        a = self.el(a).val
        if a < 0:
            return False
        import math

        n, d = a.numerator, a.denominator
        return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d

    def sqrt(self, a: FieldElement) -> FieldElement | None:
        a = self.el(a)
        if not self.is_square(a):
            return None
        import math

        return self.el(
            Fraction(math.isqrt(a.val.numerator), math.isqrt(a.val.denominator))
        )

    def square_class(self, a: FieldElement) -> FieldElement:
        return self.el(rational_square_class(self.el(a).val))


class RatFunc:
    """Reduced rational function over F_p: monic denominator, coprime parts."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero:
            raise DivisionByZero("zero denominator")
        g = num.gcd(den)
        if g.degree > 0:
            num, den = num // g, den // g
        if den.lead != 1:
            c = pow(den.lead, -1, den.p)
            num, den = num.scale(c), den.scale(c)
        self.num = num
        self.den = den

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.degree == 0:
            return self.num.as_str()
        return f"({self.num.as_str()})/({self.den.as_str()})"


class FunctionField(Field):
    """F_p(t), the rational functions over a prime field."""

    order = None

    def __init__(self, p: int):
        if not is_prime(p):
            raise UnsupportedField(f"{p} is not prime")
        self.p = p
        self.char = p

    def __eq__(self, other):
        return isinstance(other, FunctionField) and self.p == other.p

    def __hash__(self):
        return hash(("Fp_t", self.p))

    def __repr__(self):
        return f"Fp_t({self.p})"

    @property
    def t(self) -> FieldElement:
        return FieldElement(self, RatFunc(Poly.x(self.p), Poly.const(self.p, 1)))

    def el(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"{x.field} vs {self}")
            return x
        one = Poly.const(self.p, 1)
        if isinstance(x, int):
            return FieldElement(self, RatFunc(Poly.const(self.p, x), one))
        if isinstance(x, Poly):
            return FieldElement(self, RatFunc(x, one))
        if isinstance(x, RatFunc):
            return FieldElement(self, x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def r_add(self, a: RatFunc, b: RatFunc):
        return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den)

    def r_neg(self, a: RatFunc):
        return RatFunc(-a.num, a.den)

    def r_mul(self, a: RatFunc, b: RatFunc):
        return RatFunc(a.num * b.num, a.den * b.den)

    def r_inv(self, a: RatFunc):
        return RatFunc(a.den, a.num)

    def r_is_zero(self, a: RatFunc):
        return a.num.is_zero

    def fmt(self, a: RatFunc) -> str:
        return repr(a)

    def sample(self, rng, height: int = 2) -> FieldElement:
        def rand_poly(max_deg):
            return Poly(self.p, [rng.randrange(self.p) for _ in range(max_deg + 1)])

        num = rand_poly(height)
        den = rand_poly(max(0, height - 1))
        while den.is_zero:
            den = rand_poly(max(0, height - 1))
        return self.el(RatFunc(num, den))

    def is_square(self, a: FieldElement) -> bool:
        a = self.el(a)
        if a.is_zero:
            return True
        prod = a.val.num * a.val.den
        prime = FiniteField(self.p)
        if not prime.is_square(prime.el(prod.lead)):
            return False
        return prod.monic().sqrt() is not None

    def sqrt(self, a: FieldElement) -> FieldElement | None:
        a = self.el(a)
        if a.is_zero:
            return a
        prod = a.val.num * a.val.den
        prime = FiniteField(self.p)
        lead_rt = prime.sqrt(prime.el(prod.lead))
        if lead_rt is None:
            return None
        root = prod.monic().sqrt()
        if root is None:
            return None
        num = root.scale(lead_rt.val if self.p > 2 else 1)
        return self.el(RatFunc(num, a.val.den))

    def square_class(self, a: FieldElement) -> FieldElement:
        a = self.el(a)
        if a.is_zero:
            return a
        prod = a.val.num * a.val.den
        part, lead = prod.squarefree_part()
        prime = FiniteField(self.p)
        unit = prime.square_class(prime.el(lead))
        rep = part.scale(unit.val)
        return self.el(RatFunc(rep, Poly.const(self.p, 1)))


# ---------------------------------------------------------------------------
# Places


@dataclass(frozen=True)
class RealPlace:
    def __repr__(self):
        return "RealPlace"


@dataclass(frozen=True)
class PrimePlace:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise UnsupportedField(f"{self.p} is not prime")

    def __repr__(self):
        return f"PrimePlace({self.p})"


@dataclass(frozen=True)
class PolyPlace:
    poly: Poly

    def __post_init__(self):
        if self.poly.lead != 1 or not self.poly.is_irreducible():
            raise UnsupportedField("PolyPlace needs a monic irreducible polynomial")

    def __repr__(self):
        return f"PolyPlace({self.poly.as_str()})"


@dataclass(frozen=True)
class InfinitePlace:
    def __repr__(self):
        return "InfinitePlace"


Place = RealPlace | PrimePlace | PolyPlace | InfinitePlace


def rational_places_for(values) -> list[Place]:
    """RealPlace plus every prime place relevant to the given rationals."""
    from .numtheory import relevant_primes

    fracs = [v.val if isinstance(v, FieldElement) else Fraction(v) for v in values]
    return [RealPlace()] + [PrimePlace(p) for p in relevant_primes(fracs)]


def hilbert_symbol(a: FieldElement, b: FieldElement, place: Place) -> int:
    """(a, b) at a place of Q: +1 iff z^2 = a x^2 + b y^2 has a nontrivial
    solution in the completion."""
    if not isinstance(a.field, RationalField) or not isinstance(
        b.field, RationalField
    ):
        raise UnsupportedField("hilbert symbols are implemented over QQ only")
    if a.is_zero or b.is_zero:
        raise ValueError("hilbert symbol needs nonzero entries")
    if isinstance(place, RealPlace):
        return hilbert_symbol_real(a.val, b.val)
    if isinstance(place, PrimePlace):
        return hilbert_symbol_padic(a.val, b.val, place.p)
    raise UnsupportedField(f"{place} is not a place of QQ")


# ---------------------------------------------------------------------------
# Convenience constructors

QQ = RationalField()


def GF(q: int, k: int | None = None) -> FiniteField:
    """GF(q) for a prime power q, or GF(p, k) when two arguments are given."""
    if k is not None:
        return FiniteField(q, k)
    p, e = _prime_power_split(q)
    return FiniteField(p, e)


def _prime_power_split(q: int) -> tuple[int, int]:
    if q < 2:
        raise UnsupportedField(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            if q != 1 or not is_prime(p):
                raise UnsupportedField("not a prime power")
            return p, e
    raise UnsupportedField("not a prime power")


def embed(src: FiniteField, dst: FiniteField):
    """A field embedding GF(p^m) -> GF(p^n) for m | n, as a callable.

    Deterministic: the generator is sent to the first root of the source
    modulus in the destination's enumeration order.
    """
    if src.p != dst.p or dst.k % src.k != 0:
        raise UnsupportedField(f"no embedding {src} -> {dst}")
    if src == dst:
        return lambda x: x
    if src.k == 1:
        return lambda x: dst.el(x.val)
    minpoly = src.modulus
    root = next(
        x
        for x in dst.elements()
        if minpoly.eval_in(x, dst.one, dst.zero).is_zero
    )
    powers = [dst.one]
    for _ in range(src.k - 1):
        powers.append(powers[-1] * root)

    def phi(x: FieldElement) -> FieldElement:
        assert x.field == src
        acc = dst.zero
        for c, pw in zip(x.val, powers):
            acc = acc + pw * c
        return acc

    return phi
