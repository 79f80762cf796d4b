"""Interval arithmetic with rational endpoints.

Used for identifying roots inside isolating rectangles and for the
sanity-check evaluation of kernel relations; never for results.  A Box is an
axis-aligned rectangle with rational corners, possibly degenerate.
"""

from __future__ import annotations

from .rat import QQ, qstr


class RatInt:
    """Closed interval [lo, hi] with rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        if lo > hi:
            raise ValueError("empty interval")
        self.lo = QQ(lo)
        self.hi = QQ(hi)

    def __add__(self, other):
        other = _as_int(other)
        return RatInt(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other):
        other = _as_int(other)
        return RatInt(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self):
        return RatInt(-self.hi, -self.lo)

    def __mul__(self, other):
        other = _as_int(other)
        vals = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RatInt(min(vals), max(vals))

    def contains(self, v) -> bool:
        return self.lo <= v <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def sign(self):
        """-1, 0 (straddles), or 1."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


def _as_int(v):
    return v if isinstance(v, RatInt) else RatInt(v)


class Box:
    """Complex rectangle re x im with rational corners."""

    __slots__ = ("re", "im")

    def __init__(self, re: RatInt, im: RatInt):
        self.re = re
        self.im = im

    @staticmethod
    def point(re, im=0):
        return Box(RatInt(re), RatInt(im))

    @staticmethod
    def from_corners(re_lo, re_hi, im_lo, im_hi):
        return Box(RatInt(re_lo, re_hi), RatInt(im_lo, im_hi))

    def __add__(self, other):
        return Box(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return Box(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        return Box(self.re * other.re - self.im * other.im,
                   self.re * other.im + self.im * other.re)

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def is_real_line(self) -> bool:
        return self.im.lo == 0 and self.im.hi == 0

    @property
    def width(self):
        return max(self.re.width, self.im.width)

    def corners(self):
        return (self.re.lo, self.re.hi, self.im.lo, self.im.hi)

    def intersects(self, other: "Box") -> bool:
        return not (self.re.hi < other.re.lo or other.re.hi < self.re.lo
                    or self.im.hi < other.im.lo or other.im.hi < self.im.lo)

    def to_json(self):
        return [qstr(v) for v in self.corners()]

    def __repr__(self):
        return f"Box({self.re}, {self.im}i)"


def eval_poly_box(coeffs, box: Box) -> Box:
    """Horner evaluation of a QQ-coefficient polynomial on a complex box."""
    acc = Box.point(0)
    for v in reversed(coeffs):
        acc = acc * box + Box.point(v)
    return acc


def eval_poly_interval(coeffs, iv: RatInt) -> RatInt:
    acc = RatInt(0)
    for v in reversed(coeffs):
        acc = acc * iv + RatInt(v)
    return acc
