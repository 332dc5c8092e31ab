"""Dense univariate polynomials over a prime field F_p.

Coefficients are ints in [0, p); the coefficient tuple never has trailing
zeros, and the zero polynomial is the empty tuple.  These polynomials are
the substrate for GF(p^k) moduli, for rational function fields F_p(t) and
for their residue fields.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import DivisionByZero


class Poly:
    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs):
        self.p = p
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, p: int, c: int) -> Poly:
        return cls(p, (c,))

    @classmethod
    def x(cls, p: int) -> Poly:
        return cls(p, (0, 1))

    # -- basic structure ----------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({self.p}, {self.as_str()})"

    def as_str(self, var: str = "t") -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else str(c) + "*"
                terms.append(f"{head}{var}" if i == 1 else f"{head}{var}^{i}")
        return "+".join(terms)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.p
        return Poly(self.p, out)

    def __neg__(self) -> Poly:
        return Poly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        if self.is_zero or other.is_zero:
            return Poly(self.p, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = (out[i + j] + a * b) % self.p
        return Poly(self.p, out)

    def scale(self, c: int) -> Poly:
        return Poly(self.p, [c * a for a in self.coeffs])

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero:
            raise DivisionByZero("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        dd, dv = len(rem) - 1, other.degree
        if dd < dv:
            return Poly(p, ()), self
        inv_lead = pow(other.lead, -1, p)
        quot = [0] * (dd - dv + 1)
        for k in range(dd - dv, -1, -1):
            c = rem[k + dv] * inv_lead % p
            if c:
                quot[k] = c
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = (rem[k + j] - c * b) % p
        return Poly(p, quot), Poly(p, rem)

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def pow_mod(self, e: int, mod: Poly) -> Poly:
        result = Poly.const(self.p, 1)
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def monic(self) -> Poly:
        if self.is_zero or self.lead == 1:
            return self
        return self.scale(pow(self.lead, -1, self.p))

    def gcd(self, other: Poly) -> Poly:
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> Poly:
        return Poly(self.p, [i * c for i, c in enumerate(self.coeffs)][1:])

    def eval_int(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def eval_in(self, x, one, zero):
        """Horner evaluation with coefficients mapped through c -> c * one."""
        acc = zero
        for c in reversed(self.coeffs):
            acc = acc * x + one * c
        return acc

    # -- structure tests -----------------------------------------------
    def is_irreducible(self) -> bool:
        """Rabin's test: x^(p^n) = x mod f and gcd(x^(p^(n/q)) - x, f) = 1."""
        n = self.degree
        if n <= 0:
            return False
        if n == 1:
            return True
        p = self.p
        x = Poly.x(p)
        if x.pow_mod(p**n, self) != x % self:
            return False
        for q in _prime_divisors(n):
            h = x.pow_mod(p ** (n // q), self) - x
            if self.gcd(h).degree != 0:
                return False
        return True

    def sqrt(self) -> Poly | None:
        """g with g*g = self, or None.  Exact in every characteristic."""
        if self.is_zero:
            return self
        if self.degree % 2:
            return None
        p = self.p
        if p == 2:
            # squaring is the Frobenius: only even exponents, coeffs fixed
            if any(c and i % 2 for i, c in enumerate(self.coeffs)):
                return None
            return Poly(2, [self.coeffs[2 * i] for i in range(self.degree // 2 + 1)])
        from .numtheory import sqrt_mod_prime

        lead_rt = sqrt_mod_prime(self.lead, p)
        if lead_rt is None:
            return None
        m = self.degree // 2
        g = [0] * (m + 1)
        g[m] = lead_rt
        inv2l = pow(2 * lead_rt, -1, p)
        for k in range(m - 1, -1, -1):
            # coefficient of t^(m+k) in g^2 is 2 g_m g_k + cross terms
            cross = sum(g[i] * g[m + k - i] for i in range(k + 1, m)) % p
            ck = self.coeffs[m + k] if m + k <= self.degree else 0
            g[k] = (ck - cross) * inv2l % p
        cand = Poly(p, g)
        return cand if cand * cand == self else None

    def factor(self) -> dict[Poly, int]:
        """Factorization into monic irreducibles by trial division.

        Intended for the small-degree polynomials that occur as form
        coefficients; returns {irreducible: multiplicity}, unit dropped.
        """
        out: dict[Poly, int] = {}
        f = self.monic()
        d = 1
        while f.degree > 0:
            if d > f.degree // 2:
                out[f] = out.get(f, 0) + 1
                break
            for g in monic_irreducibles(self.p, d):
                while f.degree >= d and (f % g).is_zero:
                    out[g] = out.get(g, 0) + 1
                    f = f // g
            d += 1
        return out

    def squarefree_part(self) -> tuple[Poly, int]:
        """(monic squarefree part, unit square-class flag folded by caller)."""
        part = Poly.const(self.p, 1)
        for g, e in self.factor().items():
            if e % 2:
                part = part * g
        return part, self.lead


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def monic_irreducibles(p: int, d: int) -> tuple[Poly, ...]:
    """All monic irreducible polynomials of degree d over F_p, lexicographic."""
    out = []
    for code in range(p**d):
        cs = []
        c = code
        for _ in range(d):
            cs.append(c % p)
            c //= p
        cs.append(1)
        f = Poly(p, cs)
        if f.is_irreducible():
            out.append(f)
    return tuple(out)


@lru_cache(maxsize=None)
def default_modulus(p: int, k: int) -> Poly:
    """Deterministic irreducible modulus for GF(p^k): first in lex order."""
    if k == 1:
        return Poly.x(p)
    for code in range(p**k):
        cs = []
        c = code
        for _ in range(k):
            cs.append(c % p)
            c //= p
        cs.append(1)
        f = Poly(p, cs)
        if f.is_irreducible():
            return f
    raise ArithmeticError("no irreducible polynomial found")  # unreachable
