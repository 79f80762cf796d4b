"""Linear differential operators with polynomial coefficients.

A DiffOp is sum(coeffs[i] * D^i) with coeffs[i] polynomials over a common
exact field, acting on functions of z by D = d/dz.  Over QQ, operators are
kept content-normalized: coefficients have coprime integer entries overall
and the leading polynomial has positive leading coefficient.

The module also houses the local data extraction at a point (the expansion
polynomials p_0..p_t of L(z^s) = z^(s+g)(p_0(s) + ... + p_t(s) z^t)), shift
of the expansion point into a number field, the z -> 1/z transform for work
at infinity, recurrence/operator conversions, closure operations, and the
companion matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .numberfield import NumberField, NumberFieldDomain
from .poly import Domain, Poly, QQ_DOM, content_primitive, qpoly
from .polyfactor import integer_roots
from .rat import QQ, Q0, Q1, gcd_list, lcm_list
from .ratfun import RatFun


class DiffOp:
    __slots__ = ("dom", "coeffs")

    def __init__(self, coeffs, dom: Domain | None = None):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if dom is None:
            dom = coeffs[0].dom if coeffs else QQ_DOM
        self.dom = dom
        self.coeffs = tuple(coeffs)

    @staticmethod
    def from_lists(lists, dom=QQ_DOM):
        return DiffOp([qpoly(c) if dom is QQ_DOM else Poly(dom, c) for c in lists], dom)

    def normalized(self) -> "DiffOp":
        """Content-normalized form: coprime integer coefficients, positive lead."""
        if self.dom is not QQ_DOM or not self.coeffs:
            return self
        return DiffOp(_content_normalize(list(self.coeffs)), self.dom)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Poly:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Poly.zero(self.dom)

    def leading(self) -> Poly:
        return self.coeffs[-1]

    def max_coeff_degree(self) -> int:
        return max(c.deg for c in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, DiffOp) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp([self.coeff(i) + other.coeff(i) for i in range(n)], self.dom)

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp([self.coeff(i) - other.coeff(i) for i in range(n)], self.dom)

    def __neg__(self):
        return DiffOp([-c for c in self.coeffs], self.dom)

    def __mul__(self, other: "DiffOp") -> "DiffOp":
        """Operator composition self o other."""
        # D^i o other, computed by repeated application of D o (.)
        out = [Poly.zero(self.dom) for _ in range(self.order + other.order + 1)]
        cur = list(other.coeffs)
        for i, a in enumerate(self.coeffs):
            if i > 0:
                nxt = [Poly.zero(self.dom)] * (len(cur) + 1)
                for j, b in enumerate(cur):
                    nxt[j] = nxt[j] + b.derivative()
                    nxt[j + 1] = nxt[j + 1] + b
                cur = nxt
            if not a.is_zero():
                for j, b in enumerate(cur):
                    out[j] = out[j] + a * b
        return DiffOp(out, self.dom)

    def scale_poly(self, p: Poly) -> "DiffOp":
        return DiffOp([p * c for c in self.coeffs], self.dom)

    def primitive_part(self) -> "DiffOp":
        """Divide out the common polynomial factor of all coefficients."""
        g = None
        for c in self.coeffs:
            if c.is_zero():
                continue
            g = c if g is None else g.gcd(c)
            if g.deg == 0:
                return DiffOp(self.coeffs, self.dom)
        if g is None or g.deg == 0:
            return self
        return DiffOp([c // g for c in self.coeffs], self.dom)

    def derivative_compose(self) -> "DiffOp":
        """D o self."""
        out = [Poly.zero(self.dom)] * (len(self.coeffs) + 1)
        for j, b in enumerate(self.coeffs):
            out[j] = out[j] + b.derivative()
            out[j + 1] = out[j + 1] + b
        return DiffOp(out, self.dom)

    def adjoint(self) -> "DiffOp":
        """Formal adjoint sum((-D)^i o a_i)."""
        acc = DiffOp([], self.dom)
        minus_d = DiffOp([Poly.zero(self.dom), -Poly.one(self.dom)], self.dom)
        for i, a in enumerate(self.coeffs):
            term = DiffOp([a], self.dom)
            for _ in range(i):
                term = minus_d * term
            acc = acc + term
        return acc

    def to_ratfun(self) -> list[RatFun]:
        return [RatFun(c) for c in self.coeffs]

    def monic_ratfun(self) -> list[RatFun]:
        lead = RatFun(self.leading())
        return [RatFun(c) / lead for c in self.coeffs]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.order, -1, -1):
            c = self.coeff(i)
            if c.is_zero():
                continue
            cs = f"({c})"
            parts.append(f"{cs}*Dz^{i}" if i else cs)
        return " + ".join(parts)


def _content_normalize(coeffs):
    nums = []
    dens = []
    for c in coeffs:
        for v in c.c:
            nums.append(int(v.numerator))
            dens.append(int(v.denominator))
    den = lcm_list(dens)
    g = gcd_list(abs(n * den) for n in nums) or 1
    lead = coeffs[-1]
    sign = -1 if lead.lc() < 0 else 1
    s = QQ(sign * den, g)
    if s == 1:
        return coeffs
    return [c.scale(s) for c in coeffs]


# -- division, gcrd --------------------------------------------------------------


def right_divmod(a: DiffOp, b: DiffOp) -> tuple[list[RatFun], DiffOp]:
    """Quotient (rational-function coefficients) and remainder with a = q o b + r."""
    if b.is_zero():
        raise ZeroDivisionError("right division by zero operator")
    dom = a.dom
    rem = [RatFun(c) for c in a.coeffs]
    quo = [RatFun.zero(dom) for _ in range(max(0, a.order - b.order + 1))]
    while len(rem) - 1 >= b.order and rem:
        while rem and rem[-1].is_zero():
            rem.pop()
        if len(rem) - 1 < b.order:
            break
        k = len(rem) - 1 - b.order
        # q_k * D^k o b  has leading coefficient q_k * lead(b)
        qk = rem[-1] / RatFun(b.leading())
        quo[k] = quo[k] + qk
        # subtract qk * D^k o b
        shifted = _dk_compose(b, k)
        for j, c in enumerate(shifted):
            while j >= len(rem):
                rem.append(RatFun.zero(dom))
            rem[j] = rem[j] - qk * RatFun(c)
        while rem and rem[-1].is_zero():
            rem.pop()
    return quo, _clear_ratfun(rem, dom)


def _dk_compose(b: DiffOp, k: int) -> list[Poly]:
    cur = list(b.coeffs)
    for _ in range(k):
        nxt = [Poly.zero(b.dom)] * (len(cur) + 1)
        for j, c in enumerate(cur):
            nxt[j] = nxt[j] + c.derivative()
            nxt[j + 1] = nxt[j + 1] + c
        cur = nxt
    return cur


def _clear_ratfun(coeffs: list[RatFun], dom) -> DiffOp:
    """Clear denominators of a rational-coefficient operator to a DiffOp."""
    if not coeffs:
        return DiffOp([], dom)
    den = Poly.one(dom)
    for c in coeffs:
        g = den.gcd(c.den)
        den = den * (c.den // g)
    out = [(c.num * (den // c.den)) for c in coeffs]
    return DiffOp(out, dom)


def right_remainder(a: DiffOp, b: DiffOp) -> DiffOp:
    return right_divmod(a, b)[1]


def right_divides(b: DiffOp, a: DiffOp) -> bool:
    """True when b right-divides a (zero remainder)."""
    return right_remainder(a, b).is_zero()


def gcrd(a: DiffOp, b: DiffOp) -> DiffOp:
    """Greatest common right divisor, content-normalized."""
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.order < b.order:
        a, b = b, a
    while True:
        r = right_remainder(a, b)
        if a.dom is QQ_DOM:
            r = r.primitive_part()
        if r.is_zero():
            return b
        a, b = b, r


# -- local expansion data ---------------------------------------------------------


@dataclass
class IndicialData:
    """Local data of L at a point: L(z^s) = z^(s+shift) sum(p_i(s) z^i)."""

    point: object  # "origin", "infinity", or an AlgNum
    indicial: Poly  # p_0, in the indeterminate s
    shift: int  # g_L
    expansion: list[Poly] = field(default_factory=list)  # p_0..p_t


def falling_factorial(dom, i: int) -> Poly:
    """s(s-1)...(s-i+1) over dom."""
    out = Poly.one(dom)
    s = Poly.x(dom)
    for k in range(i):
        out = out * (s - Poly.const(dom, dom.from_int(k)))
    return out


def indicial_at_origin(op: DiffOp) -> IndicialData:
    dom = op.dom
    ffs = [falling_factorial(dom, i) for i in range(op.order + 1)]
    offsets = {}
    for i, a in enumerate(op.coeffs):
        for k, coeff in enumerate(a.c):
            if dom.is_zero(coeff):
                continue
            e = k - i
            cur = offsets.get(e)
            term = ffs[i].scale(coeff)
            offsets[e] = term if cur is None else cur + term
    offsets = {e: p for e, p in offsets.items() if not p.is_zero()}
    g = min(offsets)
    t = max(offsets)
    expansion = [offsets.get(e, Poly.zero(dom)) for e in range(g, t + 1)]
    return IndicialData("origin", expansion[0], g, expansion)


def to_numberfield(op: DiffOp, nf: NumberField) -> DiffOp:
    """Coefficientwise embedding of a QQ operator into QQ(theta)."""
    nd = nf.dom
    out = [Poly(nd, [nd.from_rational(v) for v in c.c]) for c in op.coeffs]
    return DiffOp(out, nd)


def shift_point(op: DiffOp, alpha) -> DiffOp:
    """Operator for u(z) = y(z + alpha); local analysis at alpha -> origin.

    alpha is an AlgNum (its field becomes the coefficient field) or a
    rational.
    """
    from .numberfield import AlgNum

    if isinstance(alpha, AlgNum):
        nf = alpha.field
        base = to_numberfield(op, nf) if op.dom is QQ_DOM else op
        a = alpha.coords
        return DiffOp([c.taylor_shift(a) for c in base.coeffs], base.dom)
    return DiffOp([c.taylor_shift(QQ(alpha)) for c in op.coeffs], op.dom)


def transform_infinity(op: DiffOp) -> DiffOp:
    """Operator in the local parameter t = 1/z (D_z = -t^2 D_t), cleared."""
    dom = op.dom
    d = op.max_coeff_degree()
    # a_i(1/t) = t^(-d) * rev_d(a_i); multiply through by t^d afterwards
    minus_t2_d = DiffOp([Poly.zero(dom), -Poly(dom, (dom.zero, dom.zero, dom.one))],
                        dom)
    acc = DiffOp([], dom)
    power = DiffOp([Poly.one(dom)], dom)
    for i, a in enumerate(op.coeffs):
        if i > 0:
            power = minus_t2_d * power
        if not a.is_zero():
            acc = acc + power.scale_poly(a.reverse(d))
    out = acc if dom is not QQ_DOM else acc.primitive_part()
    return DiffOp(out.coeffs, dom)


def indicial_at(op: DiffOp, point) -> IndicialData:
    """Indicial data at 'origin', 'infinity', a rational, or an AlgNum."""
    if isinstance(point, str) and point == "origin":
        return indicial_at_origin(op)
    if isinstance(point, str) and point == "infinity":
        data = indicial_at_origin(transform_infinity(op))
        return IndicialData("infinity", data.indicial, data.shift, data.expansion)
    data = indicial_at_origin(shift_point(op, point))
    return IndicialData(point, data.indicial, data.shift, data.expansion)


def integer_root_set(op: DiffOp) -> list[int]:
    """Nonnegative integer roots of the indicial polynomial at the origin."""
    ind = indicial_at_origin(op).indicial
    return sorted(r for r in integer_roots(ind) if r >= 0)


# -- recurrences -------------------------------------------------------------------


@dataclass
class RecOp:
    """sum(coeffs[j](n) * u_{n+j}) = 0; coefficients are polynomials in n."""

    coeffs: list[Poly]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def trim(self) -> "RecOp":
        """Normalize so leading and trailing coefficients are nonzero."""
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        shift = 0
        while coeffs and coeffs[0].is_zero():
            coeffs.pop(0)
            shift += 1
        if shift:
            coeffs = [c.taylor_shift(QQ(shift)) for c in coeffs]
        return RecOp(coeffs)

    def apply(self, seq, n):
        """Value of the recurrence at index n for a sequence prefix."""
        return sum((c(QQ(n)) * seq[n + j] for j, c in enumerate(self.coeffs)), Q0)

    def extend(self, prefix: list, count: int) -> list:
        """Extend a consistent prefix; leading coefficient must not vanish."""
        seq = list(prefix)
        t = self.order
        lead = self.coeffs[-1]
        while len(seq) < count:
            n = len(seq) - t
            s = sum((c(QQ(n)) * seq[n + j] for j, c in enumerate(self.coeffs[:-1])), Q0)
            lv = lead(QQ(n))
            if not lv:
                raise ValueError(f"leading coefficient vanishes at index {n}")
            seq.append(-s / lv)
        return seq


def _stirling2(n: int) -> list[list[int]]:
    s = [[1]]
    for i in range(1, n + 1):
        prev = s[i - 1]
        row = [0] * (i + 1)
        for j in range(1, i + 1):
            row[j] = (prev[j - 1] if j - 1 < len(prev) else 0) + \
                     j * (prev[j] if j < len(prev) else 0)
        s.append(row)
    return s


def theta_poly_to_diffop(p: Poly) -> DiffOp:
    """p(theta) with theta = z*D, as a DiffOp."""
    s2 = _stirling2(p.deg if p.deg >= 0 else 0)
    out = [Poly.zero(QQ_DOM) for _ in range(p.deg + 1)]
    for k, c in enumerate(p.c):
        if not c:
            continue
        if k == 0:
            out[0] = out[0] + Poly.const(QQ_DOM, c)
            continue
        for i in range(1, k + 1):
            if s2[k][i]:
                out[i] = out[i] + Poly(QQ_DOM, (Q0,) * i + (c * s2[k][i],))
    return DiffOp(out, QQ_DOM)


def rec_to_deq(rec: RecOp) -> DiffOp:
    """Operator annihilating sum(u_n z^n) for the specified solution sequence.

    Primitive theta-form translation sum_j z^(t-j) p_j(theta - j); wrapped
    with D while the result has order zero (then it annihilates every
    solution's generating function).
    """
    rec = rec.trim()
    t = rec.order
    acc = DiffOp([], QQ_DOM)
    for j, p in enumerate(rec.coeffs):
        if p.is_zero():
            continue
        shifted = p.taylor_shift(QQ(-j))
        term = theta_poly_to_diffop(shifted)
        term = term.scale_poly(Poly(QQ_DOM, (Q0,) * (t - j) + (Q1,)))
        acc = acc + term
    dz = DiffOp([Poly.zero(QQ_DOM), Poly.one(QQ_DOM)], QQ_DOM)
    while acc.order == 0 and not acc.is_zero():
        acc = dz * acc
    return acc.primitive_part().normalized()


def deq_to_rec(op: DiffOp) -> RecOp:
    """Recurrence satisfied by the coefficients of any power series solution."""
    data = indicial_at_origin(op)
    t = len(data.expansion) - 1
    coeffs = [data.expansion[t - j].taylor_shift(QQ(j)) for j in range(t + 1)]
    return RecOp(coeffs).trim()


# -- closure operations -------------------------------------------------------------


def _ratfun_row_reduce(rows: list[list[RatFun]]):
    """Find a nontrivial left-null combination of the given rows, if any.

    Returns coefficients c (list of RatFun, one per row) with sum c_i row_i = 0
    and c nonzero, or None if rows are independent.
    """
    dom = rows[0][0].dom if rows and rows[0] else QQ_DOM
    n = len(rows[0]) if rows else 0
    # track the combination producing each reduced row
    work = [list(r) for r in rows]
    combo = [[RatFun.one(dom) if i == j else RatFun.zero(dom) for j in range(len(rows))]
             for i in range(len(rows))]
    pivots: list[tuple[int, int]] = []  # (row index, column)
    for i in range(len(work)):
        row = work[i]
        for pi, pc in pivots:
            if not row[pc].is_zero():
                f = row[pc]
                row[:] = [a - f * b for a, b in zip(row, work[pi])]
                combo[i] = [a - f * b for a, b in zip(combo[i], combo[pi])]
        col = next((j for j in range(n) if not row[j].is_zero()), None)
        if col is None:
            return combo[i]
        inv = row[col]
        row[:] = [a / inv for a in row]
        combo[i] = [a / inv for a in combo[i]]
        pivots.append((i, col))
    return None


def image_annihilator(op: DiffOp, image: DiffOp) -> DiffOp:
    """Operator annihilating image(f) for every solution f of op."""
    dom = op.dom
    r = op.order
    cur = right_remainder(image, op)
    rows = []
    while True:
        vec = [RatFun(cur.coeff(i)) for i in range(r)]
        rows.append(vec)
        dep = _ratfun_row_reduce(rows)
        if dep is not None:
            return _clear_ratfun(dep, dom)
        cur = right_remainder(cur.derivative_compose(), op)


def homogenize(op: DiffOp, rhs: RatFun) -> DiffOp:
    """From M(y) = rhs build the homogeneous annihilator of the solutions.

    Zero rhs returns op; otherwise (rhs*D - rhs') o M, cleared.
    """
    if rhs.is_zero():
        return op
    dom = op.dom
    den2 = rhs.den * rhs.den
    a1 = rhs.num * rhs.den  # rhs * den^2
    a0 = -(rhs.num.derivative() * rhs.den - rhs.num * rhs.den.derivative())
    left = DiffOp([a0, a1], dom)
    out = left * op
    return out.primitive_part() if dom is QQ_DOM else out


def substitute_image(op: DiffOp, p: Poly, qden: Poly) -> DiffOp:
    """Operator annihilating (f - p)/qden for every solution f of op."""
    if qden.is_zero():
        raise ValueError("zero denominator")
    dom = op.dom
    # L o (qden * .) by Leibniz
    out = [Poly.zero(dom) for _ in range(op.order + 1)]
    qders = [qden]
    for _ in range(op.order):
        qders.append(qders[-1].derivative())
    binom = [[1]]
    for i in range(1, op.order + 1):
        binom.append([1] + [binom[-1][j - 1] + (binom[-1][j] if j < i else 0)
                            for j in range(1, i)] + [1])
    for i, a in enumerate(op.coeffs):
        if a.is_zero():
            continue
        for j in range(i + 1):
            term = a * qders[i - j]
            if binom[i][j] != 1:
                term = term.scale(dom.from_int(binom[i][j]))
            out[j] = out[j] + term
    m0 = DiffOp(out, dom)
    rhs = apply_to_polynomial(op, p)
    hom = homogenize(m0, RatFun(-rhs))
    return hom.primitive_part() if dom is QQ_DOM else hom


def apply_to_polynomial(op: DiffOp, p: Poly) -> Poly:
    out = Poly.zero(op.dom)
    dp = p
    for a in op.coeffs:
        out = out + a * dp
        dp = dp.derivative()
    return out


def companion_matrix(op: DiffOp, inhom: tuple[DiffOp, RatFun] | None = None):
    """First-order system matrix over the fraction field.

    Homogeneous: Y = (f, ..., f^(r-1)), Y' = A Y.  With inhom = (M, B) for
    M(f) = B of order s: Y = (1, f, ..., f^(s-1)) and the first row is zero.
    """
    if inhom is None:
        r = op.order
        lead = RatFun(op.leading())
        rows = []
        for i in range(r - 1):
            rows.append([RatFun.one(op.dom) if j == i + 1 else RatFun.zero(op.dom)
                         for j in range(r)])
        rows.append([-RatFun(op.coeff(j)) / lead for j in range(r)])
        return rows
    m, b = inhom
    s = m.order
    dom = m.dom
    lead = RatFun(m.leading())
    n = s + 1
    rows = [[RatFun.zero(dom) for _ in range(n)] for _ in range(n)]
    for i in range(1, s):
        rows[i][i + 1] = RatFun.one(dom)
    rows[s][0] = b / lead
    for j in range(s):
        rows[s][j + 1] = -RatFun(m.coeff(j)) / lead
    return rows
