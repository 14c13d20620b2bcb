"""Minimal directed-rounding interval arithmetic.

Every operation computes with ordinary double arithmetic and then widens the
result outward by one ulp on each side, which soundly over-approximates the
at-most-half-ulp rounding error of IEEE +, -, *, / and sqrt.  Only the
operations needed by the hardened certificate checks are provided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class IntervalDomainError(ArithmeticError):
    """Operation undefined on the interval (division through zero, sqrt of
    a partly negative interval)."""


def _lo(x: float) -> float:
    return math.nextafter(x, -math.inf)


def _hi(x: float) -> float:
    return math.nextafter(x, math.inf)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or self.lo > self.hi:
            raise IntervalDomainError(f"invalid interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(x: float) -> "Interval":
        return Interval(x, x)

    @staticmethod
    def _coerce(x) -> "Interval":
        if isinstance(x, Interval):
            return x
        return Interval(float(x), float(x))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other):
        o = Interval._coerce(other)
        return Interval(_lo(self.lo + o.lo), _hi(self.hi + o.hi))

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-Interval._coerce(other))

    def __rsub__(self, other):
        return (-self) + Interval._coerce(other)

    def __mul__(self, other):
        o = Interval._coerce(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(_lo(min(products)), _hi(max(products)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Interval._coerce(other)
        if o.lo <= 0.0 <= o.hi:
            raise IntervalDomainError(f"division by interval containing zero: [{o.lo}, {o.hi}]")
        quotients = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return Interval(_lo(min(quotients)), _hi(max(quotients)))

    def __rtruediv__(self, other):
        return Interval._coerce(other) / self

    def sqrt(self) -> "Interval":
        if self.lo < 0.0:
            raise IntervalDomainError(f"sqrt of partly negative interval [{self.lo}, {self.hi}]")
        return Interval(max(0.0, _lo(math.sqrt(self.lo))), _hi(math.sqrt(self.hi)))

    def square(self) -> "Interval":
        # Tighter than self * self when the interval straddles zero.
        if self.lo <= 0.0 <= self.hi:
            m = max(-self.lo, self.hi)
            return Interval(0.0, _hi(m * m))
        return self * self

    def split(self) -> tuple["Interval", "Interval"]:
        mid = 0.5 * (self.lo + self.hi)
        return Interval(self.lo, mid), Interval(mid, self.hi)
