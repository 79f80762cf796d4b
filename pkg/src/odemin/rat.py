"""Exact rational arithmetic helpers.

Rationals are gmpy2.mpq values (fractions.Fraction when gmpy2 is missing);
both normalize to coprime numerator / positive denominator, which is the
canonical form used everywhere in this package.  Serialization is "p/q" or
"p" in decimal.
"""

from __future__ import annotations

import math

try:
    from gmpy2 import mpq as QQ, mpz as _mpz

    def _num(a):
        return a.numerator

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as QQ

    _mpz = int
    HAVE_GMPY2 = False


Q0 = QQ(0)
Q1 = QQ(1)


def q(num, den=1):
    """Build a rational; accepts ints, rationals, and 'p/q' strings."""
    if isinstance(num, str):
        return QQ(num.strip())
    return QQ(num) / den if den != 1 else QQ(num)


def is_rational(a) -> bool:
    return isinstance(a, (int, type(Q0)))


def qstr(a) -> str:
    """Canonical 'p/q' or 'p' form."""
    a = QQ(a)
    if a.denominator == 1:
        return str(a.numerator)
    return f"{a.numerator}/{a.denominator}"


def as_integer(a):
    """Return the int value of a rational that is an integer, else None."""
    a = QQ(a)
    if a.denominator == 1:
        return int(a.numerator)
    return None


def gcd_list(values) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, int(v))
        if g == 1:
            return 1
    return g


def lcm_list(values) -> int:
    l = 1
    for v in values:
        v = int(v)
        if v:
            l = l // math.gcd(l, v) * abs(v)
    return l


def floor_q(a) -> int:
    a = QQ(a)
    return int(a.numerator // a.denominator)


def ceil_q(a) -> int:
    return -floor_q(-QQ(a))


def rational_reconstruct(u: int, m: int):
    """Rational a/b with a ≡ b·u (mod m), |a|, b ≤ sqrt(m/2); None if absent.

    Classical Wang reconstruction via the half-extended Euclidean scheme.
    """
    u %= m
    if u == 0:
        return QQ(0)
    bound = math.isqrt(m // 2)
    r0, r1 = m, u
    s0, s1 = 0, 1
    while r1 > bound:
        k = r0 // r1
        r0, r1 = r1, r0 - k * r1
        s0, s1 = s1, s0 - k * s1
    if r1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return QQ(r1, s1)


def crt_pair(a1: int, m1: int, a2: int, m2: int) -> tuple[int, int]:
    """Combine residues a1 mod m1, a2 mod m2 (coprime moduli)."""
    inv = pow(m1 % m2, -1, m2)
    t = ((a2 - a1) * inv) % m2
    return a1 + m1 * t, m1 * m2
