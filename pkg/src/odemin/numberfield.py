"""Number fields QQ(theta) and exact algebraic numbers.

A NumberField is QQ[x]/(mu) for a monic irreducible mu, together with an
isolating box selecting which complex root theta denotes.  Field elements are
fixed-length tuples of rationals (coordinates in the power basis); AlgNum
wraps an element with its field for value-level operations: minimal
polynomial over QQ, isolating box of the value itself, and equality across
different representations.

Factorization over a number field uses Trager's norm method: the norm is a
resultant with the field modulus (computed by evaluation/interpolation),
factored over QQ, and factors are pulled back by gcd.
"""

from __future__ import annotations

from .intervals import Box, RatInt, eval_poly_box
from .poly import (
    Domain,
    Poly,
    QQ_DOM,
    content_primitive,
    qpoly,
    resultant,
    squarefree_decomposition,
)
from .polyfactor import factor, is_irreducible
from .rat import QQ, Q0, Q1, q, qstr
from .roots import count_rect, isolate_roots_squarefree, refine_box


class NumberFieldDomain(Domain):
    """Field arithmetic on tuples of rationals modulo the field modulus."""

    char = 0

    def __init__(self, modulus: Poly):
        self.modulus = modulus
        d = modulus.deg
        self.degree = d
        self.zero = (Q0,) * d
        self.one = ((Q1,) + (Q0,) * (d - 1)) if d else ()
        # x^(d+k) mod modulus for k = 0..d-2, as coordinate tuples
        table = []
        cur = [-v for v in modulus.c[:-1]]
        table.append(tuple(cur))
        for _ in range(d - 2):
            cur = [Q0] + cur[:-1]
            top = cur.pop() if len(cur) > d else Q0
            if len(cur) < d:
                cur += [Q0] * (d - len(cur))
            cur = [cur[i] + top * table[0][i] for i in range(d)]
            table.append(tuple(cur))
        self._red = table

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        d = self.degree
        conv = [Q0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = conv[:d]
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                red = self._red[k - d]
                for i in range(d):
                    out[i] += c * red[i]
        return tuple(out)

    def inv(self, a):
        ap = Poly(QQ_DOM, a)
        g, s, _ = ap.xgcd(self.modulus)
        if g.deg != 0:
            raise ZeroDivisionError("not invertible (reducible modulus?)")
        s = s.scale(1 / g.c[0])
        return self.coords(s)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return all(not x for x in a)

    def eq(self, a, b):
        return a == b

    def from_int(self, n):
        return (QQ(n),) + (Q0,) * (self.degree - 1)

    def from_rational(self, v):
        return (QQ(v),) + (Q0,) * (self.degree - 1)

    def coords(self, p: Poly):
        """Coordinates of a QQ polynomial of degree < degree."""
        return tuple(p[i] for i in range(self.degree))

    def __eq__(self, other):
        return isinstance(other, NumberFieldDomain) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("NF", self.modulus.c))

    def __repr__(self):
        return f"QQ[x]/({self.modulus})"


class NumberField:
    """QQ(theta) with theta the root of `modulus` inside `box`."""

    def __init__(self, modulus: Poly, box: Box | None = None, check: bool = True):
        _, modulus = content_primitive(modulus)
        modulus = modulus.monic()
        if check and modulus.deg > 1 and not is_irreducible(modulus):
            raise ValueError("number field modulus must be irreducible")
        self.modulus = modulus
        self.degree = modulus.deg
        self.dom = NumberFieldDomain(modulus)
        if box is None:
            box = isolate_roots_squarefree(modulus)[0]
        self._box = box
        self._traces = None

    def gen(self) -> "AlgNum":
        if self.degree == 1:
            return AlgNum(self, (-self.modulus.c[0],))
        return AlgNum(self, (Q0, Q1) + (Q0,) * (self.degree - 2))

    def element(self, coeffs) -> "AlgNum":
        coeffs = [q(v) for v in coeffs]
        coeffs += [Q0] * (self.degree - len(coeffs))
        return AlgNum(self, tuple(coeffs[: self.degree]))

    def from_rational(self, v) -> "AlgNum":
        return AlgNum(self, self.dom.from_rational(v))

    # -- numeric identification ------------------------------------------------

    def theta_box(self, width=None) -> Box:
        if width is not None and self._box.width > width:
            self._box = refine_box(self.modulus, self._box, width)
        return self._box

    def basis_traces(self):
        """Traces of 1, theta, ..., theta^(d-1), by Newton's identities."""
        if self._traces is None:
            d = self.degree
            c = self.modulus.c
            p = [QQ(d)] + [Q0] * (d - 1)
            for k in range(1, d):
                s = -k * c[d - k]
                for i in range(1, k):
                    s -= c[d - i] * p[k - i]
                p[k] = s
            self._traces = p
        return self._traces

    def __repr__(self):
        return f"NumberField({self.modulus})"


_QQ_FIELD_CACHE: dict = {}


def rational_field() -> NumberField:
    """The degree-1 field QQ = QQ[x]/(x), cached."""
    if "QQ" not in _QQ_FIELD_CACHE:
        _QQ_FIELD_CACHE["QQ"] = NumberField(Poly.x(QQ_DOM), Box.point(0), check=False)
    return _QQ_FIELD_CACHE["QQ"]


class AlgNum:
    """An exact algebraic number: an element of a NumberField."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords):
        self.field = field
        self.coords = tuple(coords)

    # arithmetic stays inside the field
    def __add__(self, other):
        return AlgNum(self.field, self.field.dom.add(self.coords, _co(self, other)))

    def __sub__(self, other):
        return AlgNum(self.field, self.field.dom.sub(self.coords, _co(self, other)))

    def __neg__(self):
        return AlgNum(self.field, self.field.dom.neg(self.coords))

    def __mul__(self, other):
        return AlgNum(self.field, self.field.dom.mul(self.coords, _co(self, other)))

    def __truediv__(self, other):
        return AlgNum(self.field, self.field.dom.div(self.coords, _co(self, other)))

    def is_zero(self):
        return self.field.dom.is_zero(self.coords)

    def is_rational(self):
        return all(not v for v in self.coords[1:])

    def as_rational(self):
        if not self.is_rational():
            raise ValueError("not rational")
        return self.coords[0] if self.coords else Q0

    def residue_poly(self) -> Poly:
        return Poly(QQ_DOM, self.coords)

    def trace(self):
        tr = self.field.basis_traces()
        return sum((v * t for v, t in zip(self.coords, tr)), Q0)

    def charpoly(self) -> Poly:
        """prod over conjugates of (x - value); degree = field degree."""
        mu = self.field.modulus
        d = mu.deg
        b = self.residue_poly()
        pts, vals = [], []
        c = 0
        while len(pts) <= d:
            pts.append(QQ(c))
            g = Poly(QQ_DOM, (QQ(c),)) - b
            if g.is_zero():
                vals.append(Q0)
            else:
                vals.append(resultant(mu, g))
            c += 1
        return _interpolate(pts, vals)

    def minpoly(self) -> Poly:
        cp = self.charpoly()
        parts = squarefree_decomposition(cp)
        assert len(parts) == 1, "charpoly of a field element is a power of its minpoly"
        return parts[0][0]

    def value_box(self, width=QQ(1, 2**32)) -> Box:
        """A box around the value, refined below `width`."""
        w = width / (1 + sum(abs(v) for v in self.coords))
        while True:
            tb = self.field.theta_box(w)
            vb = eval_poly_box(self.coords, tb)
            if vb.width <= width:
                return vb
            w /= 16

    def isolating_box(self) -> tuple[Poly, Box]:
        """(minpoly, box) with the box containing exactly one minpoly root."""
        mp = self.minpoly()
        width = QQ(1, 64)
        while True:
            vb = self.value_box(width)
            try:
                if vb.is_real_line():
                    n = _real_count(mp, vb.re)
                else:
                    n = count_rect(mp, vb)
                if n == 1:
                    return mp, vb
            except Exception:
                pass
            width /= 256

    def __eq__(self, other):
        if isinstance(other, AlgNum):
            if other.field is self.field or other.field.dom == self.field.dom and \
               other.field._box.corners() == self.field._box.corners():
                return other.coords == self.coords
            return algnum_equal(self, other)
        if other == 0:
            return self.is_zero()
        return self.is_rational() and self.as_rational() == QQ(other)

    def __hash__(self):
        return hash(self.coords) if self.is_rational() else hash((self.field.dom, self.coords))

    def __repr__(self):
        if self.is_rational():
            return qstr(self.as_rational())
        return f"AlgNum({self.residue_poly()} @ theta in {self.field._box})"

    def to_json(self):
        from .poly import poly_to_json

        mp, box = self.isolating_box()
        return {"minpoly": poly_to_json(mp), "box": box.to_json()}


def _co(a: AlgNum, other):
    if isinstance(other, AlgNum):
        if other.field.dom != a.field.dom:
            raise ValueError("mixed number fields")
        return other.coords
    return a.field.dom.from_rational(QQ(other))


def _real_count(p: Poly, iv: RatInt) -> int:
    from .poly import sturm_sequence
    from .roots import sturm_count

    if iv.width == 0:
        return 1 if p(iv.lo) == 0 else 0
    n = sturm_count(sturm_sequence(p), iv.lo, iv.hi)
    if p(iv.lo) == 0:
        n += 1
    return n


def _interpolate(xs, ys) -> Poly:
    """Lagrange interpolation over QQ."""
    out = Poly.zero(QQ_DOM)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        num = Poly.one(QQ_DOM)
        den = Q1
        for j, xj in enumerate(xs):
            if j != i:
                num = num * Poly(QQ_DOM, (-xj, Q1))
                den *= xi - xj
        out = out + num.scale(yi / den)
    return out


def algnum_equal(a: AlgNum, b: AlgNum) -> bool:
    """Value equality of algebraic numbers in possibly different fields."""
    if a.is_rational() or b.is_rational():
        return a.is_rational() and b.is_rational() and a.as_rational() == b.as_rational()
    mpa = a.minpoly()
    if mpa != b.minpoly():
        return False
    width = QQ(1, 2**16)
    while True:
        ba = a.value_box(width)
        bb = b.value_box(width)
        if not ba.intersects(bb):
            return False
        hull = Box(RatInt(min(ba.re.lo, bb.re.lo), max(ba.re.hi, bb.re.hi)),
                   RatInt(min(ba.im.lo, bb.im.lo), max(ba.im.hi, bb.im.hi)))
        try:
            if hull.is_real_line():
                if _real_count(mpa, hull.re) == 1:
                    return True
            elif count_rect(mpa, hull) == 1:
                return True
        except Exception:
            pass
        width /= 256


# -- Trager factorization ------------------------------------------------------


def factor_nf(f: Poly, field: NumberField) -> list[tuple[Poly, int]]:
    """Factor a nonzero polynomial over QQ(theta) into monic irreducibles.

    Returns [(factor, multiplicity)]; the product of factor^mult equals
    f/lc(f).
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if field.degree == 1:
        fq = Poly(QQ_DOM, [c[0] for c in f.c])
        _, fs = factor(fq)
        nd = field.dom
        return [(Poly(nd, [nd.from_rational(v) for v in g.c]), m) for g, m in fs]
    out = []
    for sqf, mult in squarefree_decomposition(f):
        for g in _trager_squarefree(sqf, field):
            out.append((g, mult))
    return out


def _nf_norm_poly(f: Poly, field: NumberField, s: int) -> Poly:
    """Norm of f(x - s*theta) as a QQ polynomial, by interpolation."""
    mu = field.modulus
    d = field.degree
    nd = field.dom
    npts = d * f.deg + 1
    theta = (Q0, Q1) + (Q0,) * (d - 2)
    shift = nd.mul(nd.from_int(-s), theta)
    fs = f.compose(Poly(nd, (shift, nd.one)))  # f(x - s*theta)
    xs, ys = [], []
    c = 0
    while len(xs) < npts:
        xc = nd.from_rational(QQ(c))
        val = Poly(QQ_DOM, fs(xc))  # element of QQ(theta) as poly in theta
        ys.append(resultant(mu, val) if not val.is_zero() else Q0)
        xs.append(QQ(c))
        c += 1
    return _interpolate(xs, ys)


def _trager_squarefree(f: Poly, field: NumberField) -> list[Poly]:
    f = f.monic()
    if f.deg <= 1:
        return [f] if f.deg == 1 else []
    nd = field.dom
    s = 0
    while True:
        norm = _nf_norm_poly(f, field, s)
        if norm.gcd(norm.derivative()).deg == 0:
            break
        s += 1
    _, nf_factors = factor(norm)
    if len(nf_factors) == 1:
        return [f]
    out = []
    theta = (Q0, Q1) + (Q0,) * (field.degree - 2)
    s_theta = nd.mul(nd.from_int(s), theta)
    for h, _ in nf_factors:
        hk = Poly(nd, [nd.from_rational(v) for v in h.c])
        hk = hk.compose(Poly(nd, (s_theta, nd.one)))  # h(x + s*theta)
        g = f.gcd(hk)
        if g.deg > 0:
            out.append(g.monic())
    return out


def isolate_roots(p: Poly) -> list[AlgNum]:
    """One AlgNum per distinct complex root of p, grouped by irreducible factor."""
    if p.is_zero():
        raise ValueError("zero polynomial has no isolated roots")
    _, fs = factor(p)
    out = []
    for f, _ in fs:
        if f.deg == 1:
            fld = rational_field()
            out.append(fld.from_rational(-f.c[0]))
            continue
        for box in isolate_roots_squarefree(f):
            fld = NumberField(f, box, check=False)
            out.append(fld.gen())
    return out
