"""Certified rational enclosures for the few transcendental quantities needed.

Center-size formulas involve natural logarithms and e; everything else in
the toolkit is exact integer/rational arithmetic.  This module wraps
mpmath's interval arithmetic to produce [lo, hi] enclosures with exact
``Fraction`` endpoints (mpmath interval bounds are dyadic, so the
conversion is lossless), then combines enclosures in exact rational
arithmetic.  Rounding a formula's upper endpoint up therefore never
undercounts an integer parameter derived from it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath.ctx_iv import MPIntervalContext
from mpmath.libmp import to_rational

DEFAULT_PREC = 128


@dataclass(frozen=True)
class QInterval:
    """A closed interval with exact rational endpoints, lo <= hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "QInterval":
        f = Fraction(x)
        return cls(f, f)

    def __add__(self, other) -> "QInterval":
        other = _as_interval(other)
        return QInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> "QInterval":
        return QInterval(-self.hi, -self.lo)

    def __sub__(self, other) -> "QInterval":
        return self + (-_as_interval(other))

    def __rsub__(self, other) -> "QInterval":
        return _as_interval(other) + (-self)

    def __mul__(self, other) -> "QInterval":
        other = _as_interval(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return QInterval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QInterval":
        other = _as_interval(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError(f"divisor interval [{other.lo}, {other.hi}] contains 0")
        quotients = (
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        )
        return QInterval(min(quotients), max(quotients))

    def __rtruediv__(self, other) -> "QInterval":
        return _as_interval(other) / self

    def max_with(self, other: "QInterval") -> "QInterval":
        return QInterval(max(self.lo, other.lo), max(self.hi, other.hi))

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def definitely_lt(self, x) -> bool:
        return self.hi < Fraction(x)

    def definitely_ge(self, x) -> bool:
        return self.lo >= Fraction(x)

    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint_float(self) -> float:
        return float((self.lo + self.hi) / 2)

    def __repr__(self) -> str:
        return f"QInterval({float(self.lo)!r}, {float(self.hi)!r})"


def _as_interval(x) -> QInterval:
    if isinstance(x, QInterval):
        return x
    return QInterval.point(x)


def ceil_upper(x: QInterval | Fraction | int) -> int:
    """Smallest integer >= the (upper end of the) value; never undercounts."""
    hi = x.hi if isinstance(x, QInterval) else Fraction(x)
    return math.ceil(hi)


def _from_ivmpf(value) -> QInterval:
    lo, hi = value._mpi_
    return QInterval(Fraction(*to_rational(lo)), Fraction(*to_rational(hi)))


def _fresh_ctx(prec: int) -> MPIntervalContext:
    # a private context per call keeps concurrent callers independent
    ctx = MPIntervalContext()
    ctx.prec = prec
    return ctx


def ln(x, prec: int = DEFAULT_PREC) -> QInterval:
    """Certified enclosure of the natural log of a positive rational (or interval)."""
    x = _as_interval(x)
    if x.lo <= 0:
        raise ValueError(f"log argument must be positive, got [{x.lo}, {x.hi}]")
    ctx = _fresh_ctx(prec)

    def bound(f: Fraction):
        return ctx.log(ctx.mpf(f.numerator) / ctx.mpf(f.denominator))

    lo = _from_ivmpf(bound(x.lo)).lo
    hi = _from_ivmpf(bound(x.hi)).hi
    return QInterval(lo, hi)


def euler_e(prec: int = DEFAULT_PREC) -> QInterval:
    ctx = _fresh_ctx(prec)
    return _from_ivmpf(ctx.exp(ctx.mpf(1)))


def log_base(x, base, prec: int = DEFAULT_PREC) -> QInterval:
    """log_base(x) as an enclosure; base may be a rational or an interval (e.g. e)."""
    num = ln(x, prec)
    den = ln(base, prec)
    return num / den
