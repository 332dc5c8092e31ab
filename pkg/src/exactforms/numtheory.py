"""Integer and rational number theory helpers.

Everything here is exact and deterministic: primality by deterministic
Miller-Rabin for 64-bit-ish inputs, factorization by trial division plus
Pollard rho, square roots mod p by Tonelli-Shanks, Hilbert symbols over Q
by the classical local formulas, and an explicit solver for the ternary
equation x^2 = b*y^2 + c*z^2 (Lagrange descent) used to build rational
isotropy witnesses.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import UnsupportedField

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    # deterministic Miller-Rabin; witness set valid for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed on {n}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {p: exponent}; ignores the sign, 0 not allowed."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    while f * f <= n and f < 100000:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def squarefree_part(n: int) -> int:
    """The squarefree integer s with n = s * (square), preserving the sign."""
    if n == 0:
        return 0
    s = -1 if n < 0 else 1
    for p, e in factorize(n).items():
        if e % 2:
            s *= p
    return s


def rational_square_class(x: Fraction) -> int:
    """Canonical squarefree-integer representative of x modulo nonzero squares."""
    if x == 0:
        return 0
    return squarefree_part(x.numerator * x.denominator)


def legendre_symbol(a: int, p: int) -> int:
    """(a|p) for odd prime p: 0 if p | a, else +-1 by Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """A square root of a mod p, or None; Tonelli-Shanks for odd p."""
    a %= p
    if p == 2 or a == 0:
        return a % p
    if legendre_symbol(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre_symbol(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def sqrt_mod_squarefree(a: int, n: int) -> int | None:
    """Square root of a modulo squarefree odd |n| via CRT over its prime factors."""
    n = abs(n)
    if n == 1:
        return 0
    residue, modulus = 0, 1
    for p in factorize(n):
        r = sqrt_mod_prime(a, p)
        if r is None:
            return None
        # CRT merge
        g, inv = _crt_pair(modulus, p)
        residue = (residue * p * g + r * modulus * inv) % (modulus * p)
        modulus *= p
    return residue


def _crt_pair(m: int, p: int) -> tuple[int, int]:
    # returns (p^{-1} mod m applied..., m^{-1} mod p); m, p coprime
    return pow(p, -1, m) if m > 1 else 0, pow(m, -1, p)


# ---------------------------------------------------------------------------
# Hilbert symbols over Q


def _two_adic_split(n: int) -> tuple[int, int]:
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    return v, n


def hilbert_symbol_real(a: Fraction, b: Fraction) -> int:
    return -1 if a < 0 and b < 0 else 1


def hilbert_symbol_padic(a: Fraction, b: Fraction, p: int) -> int:
    """(a,b)_p for a finite prime p, by the standard valuation/unit formulas."""
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol needs nonzero entries")
    ai = a.numerator * a.denominator
    bi = b.numerator * b.denominator
    if p == 2:
        alpha, u = _two_adic_split(ai)
        beta, w = _two_adic_split(bi)
        eps_u, eps_w = ((u - 1) // 2) % 2, ((w - 1) // 2) % 2
        om_u, om_w = ((u * u - 1) // 8) % 2, ((w * w - 1) // 8) % 2
        e = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if e % 2 else 1
    alpha = 0
    while ai % p == 0:
        ai //= p
        alpha += 1
    beta = 0
    while bi % p == 0:
        bi //= p
        beta += 1
    eps_p = ((p - 1) // 2) % 2
    e = alpha * beta * eps_p
    s = (-1) ** e
    if beta % 2:
        s *= legendre_symbol(ai, p)
    if alpha % 2:
        s *= legendre_symbol(bi, p)
    return s


def relevant_primes(values: list[Fraction]) -> list[int]:
    """2 together with every odd prime dividing a numerator or denominator."""
    ps = {2}
    for v in values:
        if v == 0:
            continue
        for n in (v.numerator, v.denominator):
            ps.update(factorize(n))
    ps.discard(1)
    return sorted(ps)


# ---------------------------------------------------------------------------
# Lagrange descent for X^2 = b*Y^2 + c*Z^2 over Q.
#
# Used to produce explicit isotropy witnesses for ternary forms whose
# solvability has already been certified by Hilbert symbols.  All descent
# steps preserve solvability, so the square roots requested below exist.


def _squarefree_with_cofactor(n: int) -> tuple[int, int]:
    """n = s * t^2 with s squarefree; returns (s, t)."""
    s, t = (-1 if n < 0 else 1), 1
    for p, e in factorize(n).items():
        if e % 2:
            s *= p
        t *= p ** (e // 2)
    return s, t


def solve_norm_equation(b: int, c: int) -> tuple[int, int, int] | None:
    """A nontrivial integer solution of x^2 = b y^2 + c z^2, or None.

    b, c nonzero integers.  Returns a primitive solution when the equation
    is solvable over Q; returns None when some Hilbert symbol obstructs.
    """
    if b == 0 or c == 0:
        raise ValueError("b, c must be nonzero")
    b, tb = _squarefree_with_cofactor(b)
    c, tc = _squarefree_with_cofactor(c)
    sol = _descend(b, c)
    if sol is None:
        return None
    x, y, z = sol
    # undo the squarefree reduction: y ‘absorbs’ tb, z absorbs tc
    return _primitive((x * tb * tc, y * tc, z * tb))


def _primitive(v: tuple[int, int, int]) -> tuple[int, int, int]:
    g = math.gcd(math.gcd(abs(v[0]), abs(v[1])), abs(v[2]))
    return (v[0] // g, v[1] // g, v[2] // g)


def _solvable(b: int, c: int) -> bool:
    fb, fc = Fraction(b), Fraction(c)
    if hilbert_symbol_real(fb, fc) != 1:
        return False
    for p in relevant_primes([fb, fc]):
        if hilbert_symbol_padic(fb, fc, p) != 1:
            return False
    return True


def _descend(b: int, c: int) -> tuple[int, int, int] | None:
    """Solve x^2 = b y^2 + c z^2 with b, c squarefree, by Lagrange descent."""
    if b == 1:
        return (1, 1, 0)
    if c == 1:
        return (1, 0, 1)
    if not _solvable(b, c):
        return None
    if abs(b) > abs(c):
        x, y, z = _descend(c, b)  # type: ignore[misc]
        return (x, z, y)
    # now |b| <= |c|, both squarefree, |c| >= 2; b is a square mod |c|
    t = sqrt_mod_squarefree(b % abs(c), abs(c))
    if t is None:
        # cannot happen for solvable input; guard for safety
        raise ArithmeticError(f"descent invariant broken at ({b}, {c})")
    if t > abs(c) // 2:
        t = t - abs(c)
    d_full = (t * t - b) // c
    if d_full == 0:
        # b = t^2: direct solution
        return (t, 1, 0)
    d, s = _squarefree_with_cofactor(d_full)
    sub = _descend(b, d)
    if sub is None:
        raise ArithmeticError(f"descent lost solvability at ({b}, {c}) -> ({b}, {d})")
    x1, y1, z1 = sub
    # multiply (x1, y1, z1) for (b, d) with the solution (t, 1, 1) of
    # x^2 - b y^2 = c*d_full using the norm form of Q(sqrt b):
    #   (x1^2 - b y1^2)(t^2 - b) = (x1 t + b y1)^2 - b (x1 + t y1)^2
    # and d z1^2 * c * d_full = c * (d * s * z1)^2.
    x2 = x1 * t + b * y1
    y2 = x1 + t * y1
    z2 = d * s * z1
    return _primitive((x2, y2, z2))
