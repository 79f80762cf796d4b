"""Rational functions over an exact coefficient field."""

from __future__ import annotations

from .poly import Poly, QQ_DOM
from .rat import QQ


class RatFun:
    """num/den with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, reduce: bool = True):
        if den is None:
            den = Poly.one(num.dom)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            if num.is_zero():
                den = Poly.one(num.dom)
            else:
                g = num.gcd(den)
                if g.deg > 0:
                    num, den = num // g, den // g
            lc = den.lc()
            if not den.dom.eq(lc, den.dom.one):
                inv = den.dom.inv(lc)
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @staticmethod
    def from_const(dom, v):
        return RatFun(Poly.const(dom, v), reduce=False)

    @staticmethod
    def zero(dom):
        return RatFun(Poly.zero(dom), reduce=False)

    @staticmethod
    def one(dom):
        return RatFun(Poly.one(dom), reduce=False)

    @property
    def dom(self):
        return self.num.dom

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        other = _as_rf(self, other)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        other = _as_rf(self, other)
        return RatFun(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatFun(-self.num, self.den, reduce=False)

    def __mul__(self, other):
        other = _as_rf(self, other)
        return RatFun(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = _as_rf(self, other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def derivative(self) -> "RatFun":
        return RatFun(self.num.derivative() * self.den - self.num * self.den.derivative(),
                      self.den * self.den)

    def degree(self) -> int:
        """deg num - deg den (-inf sentinel for 0)."""
        if self.num.is_zero():
            return -(1 << 60)
        return self.num.deg - self.den.deg

    def is_polynomial(self) -> bool:
        return self.den.deg == 0

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError("not a polynomial")
        return self.num

    def __call__(self, a):
        return self.dom.div(self.num(a), self.den(a))

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num})/({self.den})"


def _as_rf(template: RatFun, v):
    if isinstance(v, RatFun):
        return v
    if isinstance(v, Poly):
        return RatFun(v, reduce=False)
    return RatFun.from_const(template.dom, template.dom.from_int(v) if isinstance(v, int) else v)
