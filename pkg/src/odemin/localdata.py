"""Local analysis of differential operators at singular points.

Operators are rewritten in theta form: sums of monomials z^e * theta^l with
theta = z d/dz, which makes the Newton polygon and the slope recursion for
exponential parts direct.  A formal solution attached to a part w looks like
exp(integral of w(1/t)/t) times a power series in the local parameter t, so
the constant coefficient w(0) is the generalized local exponent.

The recursion peels one slope at a time: roots of the edge's characteristic
polynomial give the top coefficient of w; conjugating by the corresponding
exponential shifts theta and the lower-slope parts of the conjugate are the
tails of the branch.  Ramified slopes are handled by the substitution
z = v^q.  Cases that would need a tower of proper field extensions are
reported incomplete rather than guessed; downstream degree bounds then
degrade to Unknown.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .numberfield import AlgNum, NumberField, NumberFieldDomain, factor_nf
from .poly import Poly, QQ_DOM, content_primitive
from .polyfactor import factor
from .rat import QQ, Q0, Q1, qstr
from .ratfun import RatFun
from .ore import DiffOp, indicial_at, shift_point, to_numberfield, transform_infinity


# -- theta form ------------------------------------------------------------------


def _stirling1_row(i: int) -> list[int]:
    """Coefficients of theta(theta-1)...(theta-i+1) as a polynomial in theta."""
    row = [1]
    for k in range(i):
        shifted = [0] + row
        for j in range(len(row)):
            shifted[j] -= k * row[j]
        row = shifted
    return row


def theta_form(op: DiffOp) -> dict:
    """{theta_power: {z_power: coeff}} with z powers possibly negative."""
    dom = op.dom
    out: dict[int, dict[int, object]] = {}
    for i, a in enumerate(op.coeffs):
        if a.is_zero():
            continue
        srow = _stirling1_row(i)
        for l, s1 in enumerate(srow):
            if s1 == 0:
                continue
            s1e = dom.from_int(s1)
            for k, c in enumerate(a.c):
                if dom.is_zero(c):
                    continue
                e = k - i
                lvl = out.setdefault(l, {})
                prev = lvl.get(e, dom.zero)
                lvl[e] = dom.add(prev, dom.mul(c, s1e))
    return _clean_theta(out, dom)


def _clean_theta(tf: dict, dom) -> dict:
    out = {}
    for l, lvl in tf.items():
        lvl2 = {e: c for e, c in lvl.items() if not dom.is_zero(c)}
        if lvl2:
            out[l] = lvl2
    return out


def theta_points(tf: dict) -> list[tuple[int, int]]:
    """(theta_power, z_valuation) per theta power."""
    return [(l, min(lvl)) for l, lvl in sorted(tf.items())]


# -- Newton polygon ----------------------------------------------------------------


@dataclass
class NewtonPolygon:
    point: object
    vertices: list[tuple[int, object]]  # (x, y), y rational, x ascending
    segments: list[tuple[int, object]]  # (width, rise) sorted by slope

    @property
    def order_width(self) -> int:
        return self.vertices[-1][0] - self.vertices[0][0] if self.vertices else 0

    @property
    def total_rise(self):
        return self.vertices[-1][1] - self.vertices[0][1] if self.vertices else Q0

    def slope_zero_width(self) -> int:
        for w, d in self.segments:
            if d == 0:
                return w
        return 0

    def height_at(self, x):
        """Height of the lower boundary at abscissa x (rational)."""
        vs = self.vertices
        if x <= vs[0][0]:
            return vs[0][1]
        for (x1, y1), (x2, y2) in zip(vs, vs[1:]):
            if x1 <= x <= x2:
                return y1 + QQ(y2 - y1, x2 - x1) * (x - x1) if x2 > x1 else y1
        return vs[-1][1]

    def to_json(self):
        return {"vertices": [[int(x), qstr(y)] for x, y in self.vertices],
                "segments": [[int(n), qstr(d)] for n, d in self.segments]}


def polygon_from_points(points, label="origin") -> NewtonPolygon:
    """Lower boundary of the quadrant-completed hull, vertices from x=0."""
    pts = sorted(points)
    hull: list[tuple[int, object]] = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        while hull and hull[-1][0] == p[0]:
            if hull[-1][1] <= p[1]:
                break
            hull.pop()
        if not hull or hull[-1][0] < p[0]:
            hull.append(p)
    # quadrant completion: drop the negative-slope prefix, pad flat to x=0
    while len(hull) >= 2 and hull[1][1] <= hull[0][1]:
        hull.pop(0)
    if hull and hull[0][0] > 0:
        hull.insert(0, (0, hull[0][1]))
    verts = [(x, QQ(y)) for x, y in hull]
    segs = [(x2 - x1, y2 - y1) for (x1, y1), (x2, y2) in zip(verts, verts[1:])]
    return NewtonPolygon(label, verts, segs)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon_at(op: DiffOp, point) -> NewtonPolygon:
    """Newton polygon of op at origin/infinity/a finite algebraic point."""
    local = localize(op, point)
    poly = polygon_from_points(theta_points(theta_form(local)), point)
    base = poly.vertices[0][1]
    verts = [(x, y - base) for x, y in poly.vertices]
    return NewtonPolygon(point, verts, poly.segments)


def localize(op: DiffOp, point) -> DiffOp:
    if isinstance(point, str) and point == "origin":
        return op
    if isinstance(point, str) and point == "infinity":
        return transform_infinity(op)
    return shift_point(op, point)


# -- knapsack over slopes ------------------------------------------------------------


@dataclass
class FactorPolygon:
    """Extremal (largest-rise) Newton polygon of an order-m right factor."""

    vertices: list[tuple[int, object]]
    rise: object
    chosen: list[tuple[int, object]]  # (width used, rise used) per segment
    feasible: bool = True


def knapsack_factor_polygon(polygon: NewtonPolygon, m: int) -> FactorPolygon:
    """Largest possible factor polygon of width m; infeasible when no
    admissible combination of slope widths sums to m.

    Segment widths are usable in multiples of the slope denominator (partial
    edges keep lattice vertices); slope 0 fills freely.
    """
    segs = sorted(polygon.segments, key=lambda nd: QQ(nd[1], nd[0]), reverse=True)
    best = None
    # small segment counts: enumerate usable width per positive-slope segment
    choices: list[list[tuple[int, object]]] = []
    for n, d in segs:
        if d == 0:
            continue
        q = QQ(d, n).denominator
        step = int(q)
        opts = [(w, QQ(d, n) * w) for w in range(0, n + 1, step)]
        choices.append(opts)
    zero_cap = sum(n for n, d in segs if d == 0)

    def rec(i, width_left, rise, used):
        nonlocal best
        if i == len(choices):
            if width_left <= zero_cap:
                cand = (rise, width_left, tuple(used))
                if best is None or cand[0] > best[0]:
                    best = cand
            return
        for w, r in choices[i]:
            if w <= width_left:
                used.append((w, r))
                rec(i + 1, width_left - w, rise + r, used)
                used.pop()

    rec(0, m, Q0, [])
    if best is None:
        return FactorPolygon([], Q0, [], feasible=False)
    rise, zwidth, used = best
    verts = [(0, Q0)]
    x, y = zwidth, Q0
    if zwidth:
        verts.append((zwidth, Q0))
    for (w, r) in sorted(used, key=lambda wr: QQ(wr[1], wr[0]) if wr[0] else QQ(0)):
        if w:
            x, y = x + w, y + r
            verts.append((x, y))
    return FactorPolygon(verts, rise, list(used))


# -- exponential parts ----------------------------------------------------------------


@dataclass
class ExpPartBlock:
    """A conjugacy class of exponential parts at one root of the site.

    terms lists the positive-slope levels of w as (slope, key) descending,
    where the key identifies the coefficient (its value over QQ, or the
    defining irreducible factor of an extension).  trace_w0 is the sum of the
    constant coefficients w(0) over every Qbar-conjugate part of the class
    (a rational number); pair_sum is the sum of deg(w_i - w_j) over the
    unordered pairs inside the class.
    """

    ram: int = 1  # ramification used in Fuchs sums (1 for unfolded pseudo-parts)
    reported_ram: int = 1  # ramification index of the underlying true parts
    slope: object = Q0  # degree of w (0 for regular blocks)
    terms: tuple = ()  # ((slope, key), ...) descending
    size: int = 1  # number of parts in the class at one site root
    mult: int = 1  # repetition count (separate selector per copy)
    trace_w0: object = Q0
    pair_sum: object = Q0
    incomplete: bool = False
    field: object = None  # NumberField housing the block data, if any

    def s_coefficient(self, site_degree: int = 1):
        """Sum over all site roots of (ram*w(0) - ram(ram-1)/2 * deg w)."""
        n_ext = self.size // self.ram
        return self.ram * self.trace_w0 - \
            site_degree * n_ext * QQ(self.ram * (self.ram - 1), 2) * self.slope


def cross_pair_sum(a: ExpPartBlock, b: ExpPartBlock):
    """Sum of deg(w - w') over all pairs with w in block a, w' in block b."""
    if a.terms == b.terms:
        if a.slope == 0 or a is not b and a.size == b.size:
            # identical chain: matching conjugates coincide, the rest behave
            # like internal pairs (both orders)
            return 2 * a.pair_sum if a.terms else Q0
        return 2 * a.pair_sum
    ta, tb = list(a.terms), list(b.terms)
    i = 0
    level = Q0
    while i < len(ta) or i < len(tb):
        sa = ta[i][0] if i < len(ta) else Q0
        sb = tb[i][0] if i < len(tb) else Q0
        if sa != sb:
            level = max(sa, sb)
            break
        if ta[i][1] != tb[i][1]:
            level = sa
            break
        i += 1
    return a.size * b.size * level


class IncompleteExponents(Exception):
    pass


def _theta_conjugate(tf: dict, dom, c, s: int) -> dict:
    """Substitute theta -> theta + c z^(-s) in a theta-form operator."""
    # powers[l] = (theta + c z^-s)^l as {theta: {z: coeff}}
    maxl = max(tf) if tf else 0
    powers = [{0: {0: dom.one}}]
    for _ in range(maxl):
        prev = powers[-1]
        nxt: dict[int, dict[int, object]] = {}
        for l, lvl in prev.items():
            for e, co in lvl.items():
                # theta * z^e theta^l = z^e theta^(l+1) + e z^e theta^l
                d1 = nxt.setdefault(l + 1, {})
                d1[e] = dom.add(d1.get(e, dom.zero), co)
                if e:
                    d0 = nxt.setdefault(l, {})
                    d0[e] = dom.add(d0.get(e, dom.zero), dom.mul(co, dom.from_int(e)))
                # c z^-s * z^e theta^l
                d2 = nxt.setdefault(l, {})
                d2[e - s] = dom.add(d2.get(e - s, dom.zero), dom.mul(co, c))
        powers.append(_clean_theta(nxt, dom))
    out: dict[int, dict[int, object]] = {}
    for l, lvl in tf.items():
        for e, co in lvl.items():
            for l2, lvl2 in powers[l].items():
                tgt = out.setdefault(l2, {})
                for e2, co2 in lvl2.items():
                    tgt[e + e2] = dom.add(tgt.get(e + e2, dom.zero), dom.mul(co, co2))
    return _clean_theta(out, dom)


def _theta_ramify(tf: dict, q: int) -> dict:
    """Substitute z = v^q: z-powers scale by q and theta_z = theta_v / q."""
    out = {}
    for l, lvl in tf.items():
        scale = QQ(1, q**l)
        out[l] = {e * q: c * scale for e, c in lvl.items()}
    return out


def _edge_charpoly(tf: dict, dom, x1, y1, x2, y2):
    """Characteristic polynomial of an edge, in T = c (top coefficient)."""
    n, d = x2 - x1, y2 - y1
    lam = QQ(d, n)
    q = lam.denominator
    coeffs = []
    j = x1
    while j <= x2:
        y = y1 + lam * (j - x1)
        yi = int(y) if y.denominator == 1 else None
        c = dom.zero
        if yi is not None and j in tf:
            c = tf[j].get(yi, dom.zero)
        coeffs.append(c)
        j += int(q)
    return Poly(dom, coeffs)


def _factor_over(p: Poly, dom):
    """Factor over QQ or a number field, returning [(factor, mult)] monic."""
    if dom is QQ_DOM:
        _, fs = factor(p)
        return fs
    nf = NumberField(dom.modulus, check=False)
    nf.dom = dom  # share the domain so coefficients stay compatible
    return factor_nf(p, nf)


def _poly_polygon(tf: dict) -> NewtonPolygon:
    return polygon_from_points(theta_points(tf))


def exponential_parts(op: DiffOp, point) -> list[ExpPartBlock]:
    """Complete list of exponential-part blocks of op at the point.

    Blocks marked incomplete (or a trailing incomplete marker block) signal
    an unsupported extension tower; bounds then degrade to Unknown.
    """
    local = localize(op, point)
    tf = theta_form(local)
    dom = local.dom
    try:
        blocks = _parts_recursive(tf, dom, cap=None)
    except IncompleteExponents:
        return [ExpPartBlock(incomplete=True, size=0)]
    return blocks


def _parts_recursive(tf: dict, dom, cap) -> list[ExpPartBlock]:
    """Blocks of parts with slope < cap (cap None: all)."""
    poly = _poly_polygon(tf)
    out: list[ExpPartBlock] = []
    x_regular_end = poly.vertices[0][0]
    # find flat width: first segment with slope 0 (if any)
    x = poly.vertices[0][0]
    flat_end = x
    for (w, d) in poly.segments:
        if d == 0:
            flat_end = x + w
        x += w
    # regular (slope-0) blocks come from the indicial polynomial = edge at min level
    base_level = poly.vertices[0][1]
    ind_coeffs = []
    for j in range(flat_end + 1):
        lvl = tf.get(j, {})
        ind_coeffs.append(lvl.get(int(base_level), dom.zero))
    ind = Poly(dom, ind_coeffs)
    if not ind.is_zero():
        for f, mult in _factor_over(ind, dom):
            out.extend(_exponent_block(f, mult, dom))
    # positive slopes
    xcur, ycur = poly.vertices[0]
    for (x2, y2), (x1, y1) in zip(poly.vertices[1:], poly.vertices):
        n, d = x2 - x1, y2 - y1
        if d == 0:
            continue
        lam = QQ(d, n)
        if cap is not None and lam >= cap:
            continue
        q = int(lam.denominator)
        if q > 1:
            out.extend(_ramified_blocks(tf, dom, x1, y1, x2, y2, lam))
            continue
        chi = _edge_charpoly(tf, dom, x1, y1, x2, y2)
        chi = chi.shift_down(chi.valuation())  # roots 0 do not occur on an edge
        for f, mult in _factor_over(chi, dom):
            out.extend(_slope_branch(tf, dom, f, mult, lam))
    return out


def _exponent_block(f: Poly, mult: int, dom) -> list[ExpPartBlock]:
    """Blocks for a slope-0 (constant) irreducible indicial factor."""
    deg = f.deg
    if deg == 0:
        return []
    # sum of roots of f
    s = dom.div(dom.neg(f[deg - 1]), f[deg])
    if dom is QQ_DOM:
        tr = s
        fld = None
    else:
        tr = AlgNum(_field_of(dom), s).trace()
        fld = _field_of(dom)
    return [ExpPartBlock(ram=1, slope=Q0, terms=(), size=deg, mult=mult,
                         trace_w0=tr, pair_sum=Q0, field=fld)]


_FIELD_CACHE: dict = {}


def _field_of(dom: NumberFieldDomain) -> NumberField:
    key = id(dom)
    if key not in _FIELD_CACHE:
        nf = NumberField(dom.modulus, check=False)
        nf.dom = dom
        _FIELD_CACHE[key] = nf
    return _FIELD_CACHE[key]


def _slope_branch(tf, dom, f: Poly, mult: int, lam) -> list[ExpPartBlock]:
    """Blocks from one irreducible characteristic factor at an integer slope."""
    s = int(lam)
    if f.deg == 1:
        c = dom.div(dom.neg(f[0]), f[1])
        sub_dom = dom
        ext = 1
        key = _coeff_key(c, dom)
    else:
        if dom is not QQ_DOM:
            raise IncompleteExponents("extension tower at a number-field site")
        nf = NumberField(f, check=False)
        sub_dom = nf.dom
        tf = {l: {e: sub_dom.from_rational(co) for e, co in lvl.items()}
              for l, lvl in tf.items()}
        c = sub_dom.coords(Poly.x(QQ_DOM))  # the generator: a root of f
        ext = f.deg
        key = ("ext", tuple(qstr(v) for v in f.c))
    conj = _theta_conjugate(tf, sub_dom, c, s)
    subs = _parts_recursive(conj, sub_dom, cap=lam)
    width = sum(b.size * b.mult for b in subs)
    if width != mult:
        raise IncompleteExponents("branch width mismatch (deep ramification)")
    out = []
    for b in subs:
        # trace_w0 of sub-blocks is already folded down to QQ (it sums over
        # all conjugates, including the ext conjugations of c)
        size = b.size * ext
        pair_sum = ext * b.pair_sum + QQ(ext * (ext - 1), 2) * b.size * b.size * lam
        terms = ((lam, key),) + tuple(b.terms)
        out.append(ExpPartBlock(ram=b.ram, slope=lam, terms=terms, size=size,
                                mult=b.mult, trace_w0=b.trace_w0,
                                pair_sum=pair_sum, field=b.field or
                                (None if ext == 1 else _field_of(sub_dom)),
                                incomplete=b.incomplete))
    return out


def _coeff_key(c, dom):
    if dom is QQ_DOM:
        return ("q", qstr(c))
    return ("nf", tuple(qstr(x) for x in c))


def _ramified_blocks(tf, dom, x1, y1, x2, y2, lam) -> list[ExpPartBlock]:
    """Parts on a ramified edge via z = v^q, twist-unfolded.

    The q zeta-twists of one ramified part are kept as separate pseudo-parts
    of ramification 1 with the true rational slope.  Each twist carries the
    same constant coefficient, so Fuchs sums come out exactly: the sum of
    pseudo w(0) equals r_ij * w_ij(0), and the missing -r(r-1)/2 deg(w) term
    reappears as the pair degrees between the twists.  Twist-unfolding can
    only split true Galois blocks, never merge distinct ones, so degree
    bounds stay sound (at worst weaker).
    """
    if dom is not QQ_DOM:
        raise IncompleteExponents("ramified edge over a number-field site")
    q = int(lam.denominator)
    rtf = _theta_ramify(tf, q)
    chi = _edge_charpoly(rtf, dom, x1, int(y1 * q), x2, int(y2 * q))
    chi = chi.shift_down(chi.valuation())
    out = []
    for f, mult in _factor_over(chi, dom):
        for b in _slope_branch(rtf, dom, f, mult, lam * q):
            terms = tuple((s / q, k) for s, k in b.terms)
            # v-frame exponents are theta_v eigenvalues: v^rho = t^(rho/q)
            out.append(ExpPartBlock(
                ram=1, reported_ram=q, slope=lam, terms=terms, size=b.size,
                mult=b.mult, trace_w0=b.trace_w0 / q, pair_sum=b.pair_sum / q,
                field=b.field, incomplete=b.incomplete))
    return out
