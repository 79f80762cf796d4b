"""Dense univariate polynomials over an exact coefficient domain.

A polynomial is a Poly holding a tuple of coefficients, lowest degree first,
with no trailing zeros (the zero polynomial has an empty tuple).  The
coefficient domain travels with the value: rationals (QQ_DOM), a prime field
(PrimeDomain), or a number field (NumberFieldDomain, defined in
odemin.numberfield).  All arithmetic is exact; nothing here ever touches
floating point.
"""

from __future__ import annotations

from .rat import QQ, Q0, Q1, gcd_list, lcm_list, q, qstr


class Domain:
    """Coefficient field interface; instances are stateless and hashable."""

    char = 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return not a

    def eq(self, a, b):
        return a == b


class RationalDomain(Domain):
    name = "QQ"
    zero = Q0
    one = Q1

    def inv(self, a):
        return 1 / a

    def div(self, a, b):
        return a / b

    def from_int(self, n):
        return QQ(n)

    def __repr__(self):
        return "QQ"


QQ_DOM = RationalDomain()


class PrimeDomain(Domain):
    """GF(p) with elements stored as ints in [0, p)."""

    def __init__(self, p: int):
        self.p = p
        self.zero = 0
        self.one = 1 % p
        self.char = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * pow(b, -1, self.p)) % self.p

    def from_int(self, n):
        return n % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeDomain) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class Poly:
    """Immutable dense polynomial over a Domain."""

    __slots__ = ("dom", "c")

    def __init__(self, dom: Domain, coeffs):
        while coeffs and dom.is_zero(coeffs[-1]):
            coeffs = coeffs[:-1]
        self.dom = dom
        self.c = tuple(coeffs)

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def from_ints(dom, ints):
        return Poly(dom, [dom.from_int(v) for v in ints])

    @staticmethod
    def zero(dom):
        return Poly(dom, ())

    @staticmethod
    def one(dom):
        return Poly(dom, (dom.one,))

    @staticmethod
    def x(dom):
        return Poly(dom, (dom.zero, dom.one))

    @staticmethod
    def const(dom, a):
        return Poly(dom, (a,))

    # -- basic structure ------------------------------------------------------

    @property
    def deg(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return len(self.c) == 1 and self.dom.eq(self.c[0], self.dom.one)

    def lc(self):
        """Leading coefficient (domain one for the zero polynomial)."""
        return self.c[-1] if self.c else self.dom.zero

    def __getitem__(self, k):
        if 0 <= k < len(self.c):
            return self.c[k]
        return self.dom.zero

    def __eq__(self, other):
        return isinstance(other, Poly) and self.dom == other.dom and self.c == other.c

    def __hash__(self):
        return hash((self.dom, self.c))

    def __bool__(self):
        return bool(self.c)

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        d = self.dom
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = d.add(out[i], v)
        return Poly(d, out)

    def __sub__(self, other):
        d = self.dom
        n = max(len(self.c), len(other.c))
        return Poly(d, [d.sub(self[i], other[i]) for i in range(n)])

    def __neg__(self):
        d = self.dom
        return Poly(d, [d.neg(v) for v in self.c])

    def __mul__(self, other):
        d = self.dom
        a, b = self.c, other.c
        if not a or not b:
            return Poly(d, ())
        out = [d.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if d.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                out[i + j] = d.add(out[i + j], d.mul(ai, bj))
        return Poly(d, out)

    def scale(self, a):
        d = self.dom
        if d.is_zero(a):
            return Poly(d, ())
        return Poly(d, [d.mul(v, a) for v in self.c])

    def shift_up(self, k: int):
        """Multiply by x^k."""
        if not self.c:
            return self
        return Poly(self.dom, (self.dom.zero,) * k + self.c)

    def __pow__(self, n: int):
        r = Poly.one(self.dom)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division (coefficient domain must be a field)."""
        d = self.dom
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        db, lb = other.deg, other.lc()
        if self.deg < db:
            return Poly(d, ()), self
        inv_lb = d.inv(lb)
        quo = [d.zero] * (self.deg - db + 1)
        for k in range(self.deg - db, -1, -1):
            t = d.mul(rem[k + db], inv_lb)
            if d.is_zero(t):
                continue
            quo[k] = t
            for i, bi in enumerate(other.c):
                rem[k + i] = d.sub(rem[k + i], d.mul(t, bi))
        return Poly(d, quo), Poly(d, rem[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if not self.c or self.dom.eq(self.lc(), self.dom.one):
            return self
        return self.scale(self.dom.inv(self.lc()))

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def xgcd(self, other: "Poly"):
        """(g, s, t) with s*self + t*other = g, g monic."""
        d = self.dom
        a, b = self, other
        sa, sb = Poly.one(d), Poly.zero(d)
        ta, tb = Poly.zero(d), Poly.one(d)
        while not b.is_zero():
            qv, r = a.divmod(b)
            a, b = b, r
            sa, sb = sb, sa - qv * sb
            ta, tb = tb, ta - qv * tb
        if a.is_zero():
            return a, sa, ta
        li = d.inv(a.lc())
        return a.scale(li), sa.scale(li), ta.scale(li)

    # -- calculus and substitution --------------------------------------------

    def derivative(self) -> "Poly":
        d = self.dom
        return Poly(d, [d.mul(v, d.from_int(i)) for i, v in enumerate(self.c)][1:])

    def __call__(self, a):
        """Horner evaluation at a domain element."""
        d = self.dom
        acc = d.zero
        for v in reversed(self.c):
            acc = d.add(d.mul(acc, a), v)
        return acc

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly.zero(self.dom)
        for v in reversed(self.c):
            acc = acc * other + Poly.const(self.dom, v)
        return acc

    def taylor_shift(self, a) -> "Poly":
        """p(x + a), by Horner on (x + a)."""
        return self.compose(Poly(self.dom, (a, self.dom.one)))

    def reverse(self, n: int | None = None) -> "Poly":
        """x^n * p(1/x) for n >= deg p (defaults to deg p)."""
        if n is None:
            n = self.deg
        out = [self.dom.zero] * (n + 1)
        for i, v in enumerate(self.c):
            out[n - i] = v
        return Poly(self.dom, out)

    def valuation(self) -> int:
        """Order of vanishing at 0 (for the zero polynomial, a large sentinel)."""
        if not self.c:
            return 1 << 60
        for i, v in enumerate(self.c):
            if not self.dom.is_zero(v):
                return i
        raise AssertionError("unreachable")

    def shift_down(self, k: int) -> "Poly":
        """Divide by x^k (valuation must be >= k)."""
        if not self.c:
            return self
        return Poly(self.dom, self.c[k:])

    # -- printing --------------------------------------------------------------

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for i in range(self.deg, -1, -1):
            v = self[i]
            if self.dom.is_zero(v):
                continue
            sv = str(v)
            if i == 0:
                parts.append(sv)
            elif i == 1:
                parts.append(f"{sv}*x" if sv != "1" else "x")
            else:
                parts.append(f"{sv}*x^{i}" if sv != "1" else f"x^{i}")
        return " + ".join(parts)


# -- rational-specific utilities ----------------------------------------------


def qpoly(coeffs) -> Poly:
    """Poly over QQ from ints / rationals / 'p/q' strings."""
    return Poly(QQ_DOM, [q(v) for v in coeffs])


def content_primitive(p: Poly) -> tuple[object, Poly]:
    """(content, primitive) for a QQ polynomial.

    content is rational, primitive has coprime integer coefficients with
    positive leading coefficient; content * primitive == p.
    """
    if p.is_zero():
        return Q1, p
    den = lcm_list(v.denominator for v in p.c)
    ints = [int(v * den) for v in p.c]
    g = gcd_list(ints)
    if ints[-1] < 0:
        g = -g
    return QQ(g, den), Poly(QQ_DOM, [QQ(v // g) for v in ints])


def poly_from_roots(dom, roots) -> Poly:
    acc = Poly.one(dom)
    for r in roots:
        acc = acc * Poly(dom, (dom.neg(r), dom.one))
    return acc


def reduce_mod_p(p: Poly, dom: PrimeDomain) -> Poly:
    """Image of a QQ polynomial in GF(p); fails if p divides a denominator."""
    out = []
    for v in p.c:
        den = int(v.denominator) % dom.p
        if den == 0:
            raise ZeroDivisionError(f"prime {dom.p} divides a denominator")
        out.append(int(v.numerator) % dom.p * pow(den, -1, dom.p) % dom.p)
    return Poly(dom, out)


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm (characteristic 0): [(factor_i, multiplicity_i)]."""
    assert p.dom.char == 0
    out = []
    p = p.monic()
    if p.deg < 1:
        return out
    dp = p.derivative()
    a = p.gcd(dp)
    b = p // a
    c = dp // a - b.derivative()
    i = 1
    while b.deg > 0:
        g = b.gcd(c)
        if g.deg > 0:
            out.append((g, i))
        b = b // g
        c = c // g - b.derivative()
        i += 1
    return out


def resultant(a: Poly, b: Poly):
    """Resultant over a field domain, by the Euclidean remainder sequence."""
    d = a.dom
    if a.is_zero() or b.is_zero():
        return d.zero
    res = d.one
    while True:
        if b.deg == 0:
            return d.mul(res, _dompow(d, b.c[0], a.deg))
        r = a % b
        if r.is_zero():
            return d.zero
        res = d.mul(res, _dompow(d, b.lc(), a.deg - r.deg))
        if (a.deg * b.deg) & 1:
            res = d.neg(res)
        a, b = b, r


def _dompow(d, a, n):
    acc = d.one
    for _ in range(n):
        acc = d.mul(acc, a)
    return acc


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.derivative()]
    while seq[-1].deg > 0:
        seq.append(-(seq[-2] % seq[-1]))
        if seq[-1].is_zero():
            seq.pop()
            break
    return [s for s in seq if not s.is_zero()]


def sign_variations(values) -> int:
    signs = [v for v in ((x > 0) - (x < 0) for x in values) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def poly_to_json(p: Poly) -> list[str]:
    return [qstr(v) for v in p.c]


def poly_from_json(data) -> Poly:
    return qpoly(data)
