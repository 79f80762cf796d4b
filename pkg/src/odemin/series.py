"""Truncated power and Laurent series over an exact field.

A TruncSeries stores coefficients starting at an integer valuation offset
(negative for Laurent use) up to an exclusive precision bound: coefficients
of z^e for val <= e < prec are known exactly, nothing is claimed at or beyond
prec.  Series solutions of differential operators are grown with the linear
recurrence carried by the operator's expansion polynomials at the origin.
"""

from __future__ import annotations

from .poly import Domain, Poly, QQ_DOM, PrimeDomain
from .polyfactor import integer_roots
from .rat import QQ, Q0
from .ratfun import RatFun


class InconsistentPrefix(ValueError):
    """Initial data violates the recurrence; .index is the first bad exponent."""

    def __init__(self, index: int, message: str | None = None):
        super().__init__(message or f"initial data inconsistent at index {index}")
        self.index = index


class BadPrime(ValueError):
    """The prime divides a leading recurrence value; pick another prime."""


class TruncSeries:
    __slots__ = ("dom", "val", "coeffs", "prec")

    def __init__(self, dom: Domain, val: int, coeffs, prec: int | None = None):
        coeffs = list(coeffs)
        if prec is None:
            prec = val + len(coeffs)
        assert prec == val + len(coeffs)
        self.dom = dom
        self.val = val
        self.coeffs = coeffs
        self.prec = prec

    @staticmethod
    def from_prefix(dom, values, prec=None):
        return TruncSeries(dom, 0, list(values), prec)

    def __getitem__(self, e: int):
        if e >= self.prec:
            raise IndexError(f"coefficient {e} beyond precision {self.prec}")
        if e < self.val:
            return self.dom.zero
        return self.coeffs[e - self.val]

    def known(self, e: int) -> bool:
        return e < self.prec

    def truncate(self, prec: int) -> "TruncSeries":
        if prec >= self.prec:
            return self
        return TruncSeries(self.dom, self.val, self.coeffs[: prec - self.val], prec)

    def valuation(self):
        """Exponent of the first nonzero known coefficient (None if all zero)."""
        for i, c in enumerate(self.coeffs):
            if not self.dom.is_zero(c):
                return self.val + i
        return None

    def is_zero_to_precision(self) -> bool:
        return self.valuation() is None

    def __add__(self, other: "TruncSeries"):
        d = self.dom
        val = min(self.val, other.val)
        prec = min(self.prec, other.prec)
        out = [d.zero] * (prec - val)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                e = s.val + i
                if e < prec:
                    out[e - val] = d.add(out[e - val], c)
        return TruncSeries(d, val, out, prec)

    def __sub__(self, other: "TruncSeries"):
        return self + other.scale(self.dom.neg(self.dom.one))

    def scale(self, a):
        d = self.dom
        return TruncSeries(d, self.val, [d.mul(c, a) for c in self.coeffs], self.prec)

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by z^k."""
        return TruncSeries(self.dom, self.val + k, self.coeffs, self.prec + k)

    def __mul__(self, other: "TruncSeries"):
        d = self.dom
        val = self.val + other.val
        prec = min(self.prec + other.val, other.prec + self.val)
        n = prec - val
        out = [d.zero] * n
        for i, a in enumerate(self.coeffs):
            if d.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if i + j < n:
                    out[i + j] = d.add(out[i + j], d.mul(a, b))
        return TruncSeries(d, val, out, prec)

    def inverse(self) -> "TruncSeries":
        """Truncated multiplicative inverse; the series must be a unit."""
        d = self.dom
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("cannot invert a series that is zero to precision")
        lead = self[v]
        n = self.prec - v
        inv0 = d.inv(lead)
        out = [inv0] + [d.zero] * (n - 1)
        for k in range(1, n):
            s = d.zero
            for i in range(1, k + 1):
                ci = self[v + i] if v + i < self.prec else d.zero
                s = d.add(s, d.mul(ci, out[k - i]))
            out[k] = d.neg(d.mul(inv0, s))
        return TruncSeries(d, -v, out, n - v)

    def __truediv__(self, other: "TruncSeries"):
        return self * other.inverse()

    def derivative(self) -> "TruncSeries":
        d = self.dom
        out = [d.mul(c, d.from_int(self.val + i)) for i, c in enumerate(self.coeffs)]
        val = self.val - 1
        while out and val < 0 and d.is_zero(out[0]):
            out.pop(0)
            val += 1
        if not out:
            return TruncSeries(d, self.prec - 1, [], self.prec - 1)
        return TruncSeries(d, val, out, self.prec - 1)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs[:8]):
            if not self.dom.is_zero(c):
                terms.append(f"{c}*z^{self.val + i}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(z^{self.prec})"


# -- series solutions of differential operators ---------------------------------


class LocalRecurrence:
    """The recurrence carried by an operator at the origin.

    From L(z^s) = z^(s+g)(p_0(s) + ... + p_t(s) z^t): the coefficient of
    z^(e+g) in L(S) is sum(p_i(e-i) c_{e-i}), giving one linear equation per
    output exponent.
    """

    def __init__(self, op, dom: Domain | None = None):
        from .ore import indicial_at_origin

        data = indicial_at_origin(op)
        self.shift = data.shift
        self.zset = sorted(r for r in integer_roots(data.indicial) if r >= 0)
        base = data.expansion
        if dom is None or dom is op.dom:
            self.dom = op.dom
            self.expansion = base
        elif isinstance(dom, PrimeDomain):
            from .poly import reduce_mod_p

            self.dom = dom
            self.expansion = [reduce_mod_p(p, dom) for p in base]
        else:
            raise TypeError("unsupported recurrence domain")
        self.p0 = self.expansion[0]

    def coefficient_equation(self, seq: list, e: int):
        """(residual, pivot) of the equation for c_e given c_0..c_{e-1}."""
        d = self.dom
        s = d.zero
        for i in range(1, len(self.expansion)):
            n = e - i
            if n < 0:
                break
            s = d.add(s, d.mul(self.expansion[i](d.from_int(n)), seq[n]))
        return s, self.p0(d.from_int(e))


def series_solution(op, initial, target: int, dom: Domain | None = None) -> TruncSeries:
    """The unique power series solution with the given initial data.

    `initial` is a dict {index: value} whose keys must be the nonnegative
    integer roots of the indicial polynomial, or a TruncSeries whose prefix
    is revalidated and extended.  Raises InconsistentPrefix if the data
    violates the recurrence, BadPrime if a modular run hits a zero pivot.
    """
    rec = LocalRecurrence(op, dom)
    d = rec.dom
    forced = {}
    if isinstance(initial, TruncSeries):
        if initial.val < 0:
            raise ValueError("power series solution expected")
        for i, c in enumerate(initial.coeffs):
            forced[initial.val + i] = c
        given = {e: forced[e] for e in rec.zset if e in forced}
        check_to = initial.prec
    else:
        given = {int(k): v for k, v in initial.items()}
        forced = {}
        check_to = 0
    if sorted(given) != rec.zset:
        raise InconsistentPrefix(
            -1, f"initial conditions must specify exactly indices {rec.zset}")
    target = max(target, check_to)
    seq: list = []
    for e in range(target):
        residual, pivot = rec.coefficient_equation(seq, e)
        if e in given:
            if not d.is_zero(residual):
                raise InconsistentPrefix(e)
            value = given[e] if not isinstance(given[e], (int,)) else d.from_int(given[e])
            seq.append(value)
        elif d.is_zero(pivot):
            # indicial root not in zset: over GF(p) this is a bad prime
            if isinstance(d, PrimeDomain):
                raise BadPrime(f"pivot vanishes mod p at index {e}")
            raise InconsistentPrefix(e, f"unexpected indicial root at {e}")
        else:
            seq.append(d.neg(d.div(residual, pivot)))
        if e in forced and not d.eq(seq[-1], forced[e]):
            raise InconsistentPrefix(e)
    return TruncSeries(d, 0, seq, target)


def apply_op(op, s: TruncSeries) -> TruncSeries:
    """L(S) to the precision implied by S (prec + shift of L)."""
    rec = LocalRecurrence(op, s.dom)
    d = s.dom
    g = rec.shift
    t = len(rec.expansion) - 1
    out_prec = s.prec + g
    out = []
    val = s.val + g
    for m in range(val, out_prec):
        acc = d.zero
        for i in range(t + 1):
            n = m - g - i
            if s.val <= n < s.prec:
                acc = d.add(acc, d.mul(rec.expansion[i](d.from_int(n)), s[n]))
        out.append(acc)
    res = TruncSeries(d, val, out, out_prec)
    if res.val < 0 and res.valuation() is not None and res.valuation() >= 0:
        res = TruncSeries(d, 0, res.coeffs[-res.val:], res.prec)
    return res


def reduce_series_mod_p(s: TruncSeries, dom: PrimeDomain) -> TruncSeries:
    out = []
    for c in s.coeffs:
        den = int(c.denominator) % dom.p
        if den == 0:
            raise BadPrime(f"prime {dom.p} divides a coefficient denominator")
        out.append(int(c.numerator) % dom.p * pow(den, -1, dom.p) % dom.p)
    return TruncSeries(dom, s.val, out, s.prec)


def poly_series(dom, p: Poly, prec: int) -> TruncSeries:
    return TruncSeries(dom, 0, [p[i] for i in range(prec)], prec)


def laurent_expand(f: RatFun, terms: int) -> TruncSeries:
    """Laurent expansion of a rational function at the origin of its variable.

    Use shift_point / to_numberfield beforehand to move the expansion center
    to the origin.  Returns `terms` coefficients starting at the valuation.
    """
    if f.is_zero():
        raise ZeroDivisionError("laurent expansion of the zero function undefined")
    d = f.dom
    vn = f.num.valuation()
    vd = f.den.valuation()
    val = vn - vd
    num = f.num.shift_down(vn)
    den = f.den.shift_down(vd)
    prec = terms
    ns = poly_series(d, num, prec)
    ds = poly_series(d, den, prec)
    quot = ns * ds.inverse()
    return TruncSeries(d, val, quot.coeffs[:terms], val + min(terms, len(quot.coeffs)))
