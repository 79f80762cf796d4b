"""Exact isolation of real and complex polynomial roots.

Real roots are isolated by Sturm bisection, complex ones by rectangle
subdivision with an exact winding-number count (crossings of the positive
real axis by the boundary image, located by Sturm sequences).  All
coordinates are rational; retries with jittered rectangles handle the
measure-zero cases where a root lands on a proposed edge.
"""

from __future__ import annotations

from .intervals import Box, RatInt, eval_poly_interval
from .poly import Poly, QQ_DOM, sign_variations, squarefree_decomposition, sturm_sequence
from .rat import QQ


class EdgeRootError(Exception):
    """A root lies on (or too close to) a counting-rectangle edge."""


def cauchy_bound(p: Poly):
    """Rational B with all complex roots of p in |z| < B."""
    lc = abs(p.lc())
    m = max(abs(v) for v in p.c[:-1]) if p.deg > 0 else QQ(0)
    return 1 + m / lc


# -- real roots -----------------------------------------------------------------


def sturm_count(seq, a, b) -> int:
    """Number of distinct real roots in (a, b]."""
    va = sign_variations([s(QQ(a)) for s in seq])
    vb = sign_variations([s(QQ(b)) for s in seq])
    return va - vb


def real_root_intervals(p: Poly) -> list[RatInt]:
    """Isolating intervals for the real roots of a squarefree QQ polynomial.

    Rational roots come out as degenerate single-point intervals.  The
    intervals are pairwise disjoint (no shared endpoints) and sorted, and the
    endpoints of non-degenerate intervals are never roots, so each
    non-degenerate interval is a strict sign-change bracket.
    """
    if p.deg < 1:
        return []
    from .polyfactor import rational_roots

    rat = rational_roots(p)
    rest = p
    for r in rat:
        rest = rest // Poly(QQ_DOM, (-r, QQ_DOM.one))
    out = [RatInt(r, r) for r in rat]
    if rest.deg >= 1:
        seq = sturm_sequence(rest)
        bound = cauchy_bound(rest)
        stack = [(-bound, bound)]
        while stack:
            a, b = stack.pop()
            n = sturm_count(seq, a, b)
            if n == 0:
                continue
            if n == 1:
                out.append(RatInt(a, b))
                continue
            m = (QQ(a) + b) / 2
            stack.append((a, m))
            stack.append((m, b))
    out.sort(key=lambda iv: (iv.lo, iv.hi))
    # separate touching intervals so margins around each root are positive
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            if out[i].hi >= out[i + 1].lo:
                for j in (i, i + 1):
                    if out[j].width:
                        out[j] = refine_real(rest, out[j], out[j].width / 4)
                        changed = True
        out.sort(key=lambda iv: (iv.lo, iv.hi))
        if not changed and any(out[i].hi >= out[i + 1].lo for i in range(len(out) - 1)):
            raise AssertionError("could not separate isolating intervals")
    return out


def refine_real(p: Poly, iv: RatInt, width) -> RatInt:
    """Shrink an isolating interval of squarefree p below the given width."""
    if iv.width == 0:
        return iv
    a, b = iv.lo, iv.hi
    sa = _sign(p(a))
    if sa == 0:  # endpoint is the root itself
        return RatInt(a, a)
    if _sign(p(b)) == 0:
        return RatInt(b, b)
    if sa == _sign(p(b)):
        raise ValueError("interval does not bracket a sign change")
    while b - a > width:
        m = (a + b) / 2
        sm = _sign(p(m))
        if sm == 0:
            return RatInt(m, m)
        if sm == sa:
            a = m
        else:
            b = m
    return RatInt(a, b)


def _sign(v):
    return (v > 0) - (v < 0)


# -- complex rectangle counting --------------------------------------------------


def _edge_poly(p: Poly, z0, dz):
    """Real and imaginary parts of t -> p(z0 + t*dz), as QQ polynomials."""
    x0, y0 = z0
    dx, dy = dz
    tx = Poly(QQ_DOM, (QQ(x0), QQ(dx)))
    ty = Poly(QQ_DOM, (QQ(y0), QQ(dy)))
    u = Poly.zero(QQ_DOM)
    v = Poly.zero(QQ_DOM)
    for c in reversed(p.c):
        u, v = u * tx - v * ty + Poly.const(QQ_DOM, QQ(c)), u * ty + v * tx
    return u, v


def _axis_crossings(u: Poly, v: Poly) -> int:
    """Signed crossings of the positive real axis along one edge, t in [0,1].

    Raises EdgeRootError when the image hits 0 on the edge or is real at a
    corner (ambiguous crossing), so the caller can jitter the rectangle.
    """
    if v.is_zero():
        if sturm_count(sturm_sequence(u), 0, 1) or u(QQ(0)) == 0:
            raise EdgeRootError("edge image crosses the origin")
        return 0
    if v(QQ(0)) == 0 or v(QQ(1)) == 0:
        raise EdgeRootError("corner image is real")
    g = u.gcd(v)
    if g.deg > 0 and (sturm_count(sturm_sequence(g), 0, 1) or g(QQ(0)) == 0):
        raise EdgeRootError("root on edge")
    V = (v // v.gcd(v.derivative())).monic()  # squarefree radical
    intervals = real_root_intervals(V)
    total = 0
    for k, iv in enumerate(intervals):
        if iv.hi <= 0 or iv.lo >= 1:
            continue
        left = intervals[k - 1].hi if k else QQ(-1)
        right = intervals[k + 1].lo if k + 1 < len(intervals) else QQ(2)
        total += _crossing_sign(u, v, V, iv, max(left, QQ(0)), min(right, QQ(1)))
    return total


def _bracket_root(V: Poly, iv: RatInt, left, right):
    """Strict sign-change bracket for the V-root isolated by iv.

    left < root < right holds and (left, right) contains no other V-root.
    """
    a, b = iv.lo, iv.hi
    if a == b:  # exact rational root; V simple there, margins are root-free
        d = min(a - left, right - a) / 2
        return a - d, a + d
    return a, b  # Sturm interval: endpoints are not roots, one sign change


def _crossing_sign(u: Poly, v: Poly, V: Poly, iv: RatInt, left, right) -> int:
    """Contribution of one real root of V=rad(v) on the open edge (0,1).

    Even-multiplicity touch points contribute 0; odd crossings count +1
    upward / -1 downward, and only when the real part u is positive there.
    """
    a, b = _bracket_root(V, iv, left, right)
    # position the root relative to (0,1); endpoints 0/1 are not roots
    while not (0 < a and b < 1):
        if b <= 0 or a >= 1:
            return 0
        a, b = _shrink(V, a, b)
    sa, sb = _sign(v(a)), _sign(v(b))
    while sa == 0 or sb == 0:
        a, b = _shrink(V, a, b)
        sa, sb = _sign(v(a)), _sign(v(b))
    if sa == sb:
        return 0  # even multiplicity in v: touch, not a crossing
    while True:
        s = eval_poly_interval(u.c, RatInt(a, b)).sign()
        if s:
            break
        a, b = _shrink(V, a, b)
    if s < 0:
        return 0
    return 1 if sa < 0 else -1


def _shrink(V: Poly, a, b):
    """Halve a strict bracket of a simple V-root, keeping it strict."""
    m = (a + b) / 2
    if V(m) == 0:
        d = (b - a) / 8
        while V(m - d) == 0 or V(m + d) == 0 or _sign(V(m - d)) == _sign(V(m + d)):
            d /= 2
        return m - d, m + d
    if _sign(V(m)) == _sign(V(a)):
        return m, b
    return a, m


def count_rect(p: Poly, box: Box) -> int:
    """Number of roots of p strictly inside the box (no roots on edges).

    Raises EdgeRootError when a root (of p or of the edge images) prevents an
    unambiguous count.
    """
    x0, x1 = box.re.lo, box.re.hi
    y0, y1 = box.im.lo, box.im.hi
    edges = [((x0, y0), (x1 - x0, QQ(0))),
             ((x1, y0), (QQ(0), y1 - y0)),
             ((x1, y1), (x0 - x1, QQ(0))),
             ((x0, y1), (QQ(0), y0 - y1))]
    total = 0
    for z0, dz in edges:
        u, v = _edge_poly(p, z0, dz)
        total += _axis_crossings(u, v)
    if total < 0:
        raise EdgeRootError("inconsistent winding")
    return total


_JITTERS = [QQ(0), QQ(1, 64), QQ(-1, 64), QQ(1, 97), QQ(-3, 101), QQ(5, 113), QQ(-7, 127)]


def _count_with_jitter(p: Poly, box: Box, expand_only=False):
    """count_rect with retry on jittered boxes; returns (count, box_used)."""
    w = box.width / 16 if box.width else QQ(1, 16)
    for j in _JITTERS:
        for k in _JITTERS:
            cand = Box.from_corners(box.re.lo - j * w, box.re.hi + k * w,
                                    box.im.lo - (k * w if not expand_only else 0),
                                    box.im.hi + j * w)
            if cand.im.lo < 0 < cand.im.hi and box.im.lo >= 0:
                continue
            try:
                return count_rect(p, cand), cand
            except EdgeRootError:
                continue
    raise EdgeRootError("could not find a clean counting rectangle")


def isolate_upper_half(p: Poly, n_expected: int) -> list[Box]:
    """Isolating boxes for the n_expected roots with positive imaginary part."""
    if n_expected == 0:
        return []
    bound = cauchy_bound(p)
    k = 6
    while True:
        y0 = QQ(1, 2**k)
        box = Box.from_corners(-bound - QQ(1, 3), bound + QQ(1, 5), y0, bound + QQ(1, 7))
        try:
            n = count_rect(p, box)
        except EdgeRootError:
            k += 1
            continue
        if n == n_expected:
            break
        k += 4
        if k > 512:
            raise RuntimeError("failed to capture all upper-half roots")
    out = []
    queue = [(box, n)]
    while queue:
        b, n = queue.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(b)
            continue
        for half_pair in _split_box(p, b, n):
            queue.extend(half_pair)
            break
    return out


def _split_box(p: Poly, b: Box, n: int):
    horizontal = b.re.width >= b.im.width
    lo, hi = (b.re.lo, b.re.hi) if horizontal else (b.im.lo, b.im.hi)
    w = hi - lo
    for j in _JITTERS:
        m = (lo + hi) / 2 + j * w / 8
        if horizontal:
            b1 = Box.from_corners(b.re.lo, m, b.im.lo, b.im.hi)
            b2 = Box.from_corners(m, b.re.hi, b.im.lo, b.im.hi)
        else:
            b1 = Box.from_corners(b.re.lo, b.re.hi, b.im.lo, m)
            b2 = Box.from_corners(b.re.lo, b.re.hi, m, b.im.hi)
        try:
            n1 = count_rect(p, b1)
            n2 = count_rect(p, b2)
        except EdgeRootError:
            continue
        if n1 + n2 == n:
            yield [(b1, n1), (b2, n2)]
            return
    raise EdgeRootError("box split failed")


def refine_box(p: Poly, box: Box, width) -> Box:
    """Shrink an isolating box of p below the given width."""
    if box.is_real_line():
        if box.re.width == 0:
            return box
        iv = refine_real(p, box.re, width)
        return Box(iv, RatInt(0))
    while box.width > width:
        for halves in _split_box(p, box, 1):
            for b, n in halves:
                if n == 1:
                    box = b
            break
    return box


def isolate_roots_squarefree(p: Poly) -> list[Box]:
    """Boxes (degenerate for real roots) isolating all roots of squarefree p."""
    real = real_root_intervals(p)
    boxes = [Box(iv, RatInt(0)) for iv in real]
    n_up = (p.deg - len(real)) // 2
    upper = isolate_upper_half(p, n_up)
    boxes.extend(upper)
    boxes.extend(Box(b.re, -b.im) for b in upper)
    # real isolating intervals may overlap horizontally with complex boxes;
    # shrink until all boxes are pairwise disjoint so each identifies its root
    while True:
        clash = _first_clash(boxes)
        if clash is None:
            return boxes
        i, j = clash
        boxes[i] = refine_box(p, boxes[i], boxes[i].width / 4 if boxes[i].width else QQ(1))
        boxes[j] = refine_box(p, boxes[j], boxes[j].width / 4 if boxes[j].width else QQ(1))


def _first_clash(boxes):
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            if boxes[i].intersects(boxes[j]):
                return i, j
    return None
