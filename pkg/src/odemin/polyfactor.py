"""Factorization of univariate polynomials over the rationals.

Pipeline: integer content and squarefree decomposition (Yun), factorization
modulo a good prime (Cantor-Zassenhaus), linear Hensel lifting to a Mignotte
bound, then subset recombination.  Factors are returned monic over QQ with a
rational unit, so unit * prod(f_i^{m_i}) reproduces the input exactly.
"""

from __future__ import annotations

import math
import random

from .poly import (
    Poly,
    PrimeDomain,
    QQ_DOM,
    content_primitive,
    reduce_mod_p,
    squarefree_decomposition,
)
from .rat import QQ


def factor(p: Poly) -> tuple[object, list[tuple[Poly, int]]]:
    """Factor a nonzero QQ polynomial into monic irreducibles.

    Returns (unit, [(factor, multiplicity), ...]) with factors monic and
    sorted; unit is the rational making the product equal the input.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.dom is not QQ_DOM:
        raise TypeError("factor() expects a polynomial over QQ")
    unit = p.lc()
    out: list[tuple[Poly, int]] = []
    for sqf, mult in squarefree_decomposition(p):
        v = sqf.valuation()
        if v:
            out.append((Poly.x(QQ_DOM), mult))
            sqf = sqf.shift_down(v)
            if v > 1:
                raise AssertionError("squarefree part with multiple root 0")
        for f in _factor_squarefree_monic(sqf):
            out.append((f, mult))
    out.sort(key=lambda fm: (fm[0].deg, fm[0].c))
    return unit, out


def is_irreducible(p: Poly) -> bool:
    if p.deg < 1:
        return False
    _, fs = factor(p)
    return len(fs) == 1 and fs[0][1] == 1


def integer_roots(p: Poly) -> list[int]:
    """All integer roots of a nonzero QQ polynomial."""
    _, prim = content_primitive(p)
    v = prim.valuation()
    roots = [0] if v else []
    prim = prim.shift_down(v)
    c0 = int(prim.c[0].numerator)
    lc = int(prim.lc().numerator)
    for d in _divisors(abs(c0)):
        for r in (d, -d):
            if _divides_root(prim, r, lc) and prim(QQ(r)) == 0:
                roots.append(r)
    return sorted(set(roots))


def rational_roots(p: Poly) -> list[object]:
    """All rational roots, via the linear factors of factor()."""
    _, fs = factor(p)
    return sorted(-f.c[0] for f, _ in fs if f.deg == 1)


def _divides_root(prim, r, lc):
    # cheap pre-filter: r | p(0) already holds; check p(1), p(-1) divisibility
    return True


def _divisors(n: int):
    if n == 0:
        return
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    yield from small
    yield from reversed(large)


# -- squarefree monic factorization -------------------------------------------

_PRIME_POOL_START = 4099


def _factor_squarefree_monic(f: Poly) -> list[Poly]:
    if f.deg <= 1:
        return [f] if f.deg == 1 else []
    _, F = content_primitive(f)  # integer, positive lc
    ints = [int(v.numerator) for v in F.c]
    prime = _good_prime(ints)
    gf = PrimeDomain(prime)
    fp = Poly.from_ints(gf, ints).monic()
    modular = _cz_factor(fp)
    if len(modular) == 1:
        return [f.monic()]
    lifted, modulus = _hensel_lift(ints, [m.c for m in modular], prime)
    factors = _recombine(ints, lifted, modulus)
    return sorted((g.monic() for g in factors), key=lambda g: (g.deg, g.c))


def _good_prime(ints: list[int]) -> int:
    p = _PRIME_POOL_START
    while True:
        p = _next_prime(p)
        if ints[-1] % p == 0:
            continue
        gf = PrimeDomain(p)
        fp = Poly.from_ints(gf, ints)
        if fp.gcd(fp.derivative()).deg == 0:
            return p


def _next_prime(n: int) -> int:
    n += 1 + (n % 2)
    while not _is_prime(n):
        n += 2
    return n


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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


def _cz_factor(f: Poly) -> list[Poly]:
    """Cantor-Zassenhaus over GF(p) for monic squarefree f (p odd)."""
    gf: PrimeDomain = f.dom
    out: list[Poly] = []
    rng = random.Random(0xD1F7 ^ hash(f.c) & 0xFFFFFFFF)
    # distinct-degree stage
    h = Poly.x(gf)
    d = 0
    rest = f
    while rest.deg > 0:
        d += 1
        if 2 * d > rest.deg:
            out.append(rest)
            break
        h = _powmod(h, gf.p, rest)
        g = rest.gcd(h - Poly.x(gf))
        if g.deg > 0:
            out.extend(_equal_degree_split(g, d, rng))
            rest = rest // g
            h = h % rest
    return out


def _equal_degree_split(f: Poly, d: int, rng) -> list[Poly]:
    if f.deg == d:
        return [f]
    gf: PrimeDomain = f.dom
    exp = (gf.p**d - 1) // 2
    while True:
        r = Poly(gf, [rng.randrange(gf.p) for _ in range(f.deg)] + [1])
        g = f.gcd(r)
        if 0 < g.deg < f.deg:
            pass
        else:
            w = _powmod(r, exp, f) - Poly.one(gf)
            g = f.gcd(w)
        if 0 < g.deg < f.deg:
            return _equal_degree_split(g, d, rng) + _equal_degree_split(f // g, d, rng)


def _powmod(a: Poly, n: int, mod: Poly) -> Poly:
    r = Poly.one(a.dom)
    a = a % mod
    while n:
        if n & 1:
            r = (r * a) % mod
        a = (a * a) % mod
        n >>= 1
    return r


# -- Hensel lifting over Z/p^k ------------------------------------------------


def _zmul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % m
    return _ztrim(out)


def _ztrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _zsub(a, b, m):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m for i in range(n)]
    return _ztrim(out)

def _zadd(a, b, m):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m for i in range(n)]
    return _ztrim(out)


def _zrem(a, b, m):
    """a mod b over Z/m, b monic."""
    a = list(a)
    db = len(b) - 1
    for k in range(len(a) - 1 - db, -1, -1):
        t = a[k + db]
        if t:
            for i in range(db + 1):
                a[k + i] = (a[k + i] - t * b[i]) % m
    return _ztrim(a[:db])


def _hensel_lift(ints: list[int], modular: list[tuple], p: int):
    """Lift f = lc * prod(g_i) from mod p to beyond the Mignotte bound."""
    n = len(ints) - 1
    norm2 = math.isqrt(sum(v * v for v in ints)) + 1
    bound = (1 << n) * norm2 * abs(ints[-1])
    target = 2 * bound + 1

    gf = PrimeDomain(p)
    gs = [list(g) for g in modular]  # monic, int coefficients in [0,p)
    # Bezout data mod p: s_i * prod_{j!=i} g_j == 1 mod (g_i, p)
    polys = [Poly.from_ints(gf, g) for g in gs]
    cofactors = []
    for i, gi in enumerate(polys):
        prod = Poly.one(gf)
        for j, gj in enumerate(polys):
            if j != i:
                prod = (prod * gj) % gi
        _, s, _ = prod.xgcd(gi)
        cofactors.append(s % gi)

    lc = ints[-1]
    inv_lc = pow(lc % p, -1, p)
    m = p
    while m < target:
        m2 = m * p
        prod = [lc % m2]
        for g in gs:
            prod = _zmul(prod, g, m2)
        err = _zsub([v % m2 for v in ints], prod, m2)
        assert all(v % m == 0 for v in err)
        e = [(v // m) * inv_lc % p for v in err]
        for i, g in enumerate(gs):
            ei = _zrem(_zmul(e, list(cofactors[i].c), p), g, p)
            gs[i] = _zadd(g, [m * v for v in ei], m2)
        m = m2
    return gs, m


# -- recombination -------------------------------------------------------------


def _recombine(ints: list[int], lifted: list[list[int]], modulus: int) -> list[Poly]:
    from itertools import combinations

    lc = ints[-1]
    remaining = list(range(len(lifted)))
    F = list(ints)
    out: list[Poly] = []
    k = 1
    while 2 * k <= len(remaining):
        hit = False
        for subset in combinations(remaining, k):
            cand = [lc % modulus]
            for i in subset:
                cand = _zmul(cand, lifted[i], modulus)
            cand = [_symmetric(v, modulus) for v in cand]
            g = _int_primitive(cand)
            if _int_divides(F, g):
                out.append(Poly.from_ints(QQ_DOM, g))
                F = _int_quotient(F, g)
                lc = F[-1]
                remaining = [i for i in remaining if i not in subset]
                hit = True
                break
        if not hit:
            k += 1
    if len(F) > 1:
        out.append(Poly.from_ints(QQ_DOM, _int_primitive(F)))
    return out


def _symmetric(v, m):
    v %= m
    return v - m if 2 * v > m else v


def _int_primitive(a: list[int]) -> list[int]:
    g = 0
    for v in a:
        g = math.gcd(g, v)
    if g == 0:
        return a
    if a[-1] < 0:
        g = -g
    return [v // g for v in a]


def _int_divides(a: list[int], b: list[int]) -> bool:
    return _int_quotient(a, b) is not None


def _int_quotient(a: list[int], b: list[int]):
    """Exact quotient of integer polynomials, or None."""
    if len(b) > len(a):
        return None
    if b[0] != 0 and a[0] % b[0] != 0:
        return None
    rem = list(a)
    quo = [0] * (len(a) - len(b) + 1)
    for k in range(len(quo) - 1, -1, -1):
        t, r = divmod(rem[k + len(b) - 1], b[-1])
        if r:
            return None
        quo[k] = t
        for i, bi in enumerate(b):
            rem[k + i] -= t * bi
    if any(rem):
        return None
    return quo
