"""Interval arithmetic with exact rational endpoints.

Everything closed under rational arithmetic (+, -, *, /, integer powers,
absolute value, hulls) is computed exactly: endpoints are
`fractions.Fraction` objects and no rounding happens at all, so an
interval of width zero really is a point.  The few irrational operations
the library needs (rational powers such as gamma**(1/p)) are delegated
to mpmath's interval context at a configurable binary precision; mpmath
endpoints are binary floats of arbitrary exponent and convert back to
Fraction losslessly, so enclosures remain certified across the boundary.

Directed conversion to machine floats (for JSON output and display)
rounds the lower endpoint down and the upper endpoint up by one ulp
unless the endpoint is exactly representable.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

import mpmath

from .errors import DomainError

RationalLike = Union[int, Fraction]

DEFAULT_PRECISION_BITS = 128
PRECISION_ENV_VAR = "CHAOS_LAB_PRECISION"


def working_precision() -> int:
    """Binary precision used for the mpmath-backed operations.

    Read from the CHAOS_LAB_PRECISION environment variable on every call
    so a caller can tighten it without re-importing anything.  Values
    below 53 are clamped: there is no reason to be worse than a double.
    """
    raw = os.environ.get(PRECISION_ENV_VAR)
    if raw is None:
        return DEFAULT_PRECISION_BITS
    try:
        bits = int(raw)
    except ValueError as exc:
        raise DomainError(f"{PRECISION_ENV_VAR} must be an integer, got {raw!r}") from exc
    return max(53, bits)


def as_fraction(value) -> Fraction:
    """Coerce an int/Fraction/float/decimal-string to an exact Fraction.

    Floats are binary rationals and convert exactly; strings go through
    Fraction's parser so "1/3" and "0.25" both work.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError("booleans are not numbers here")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"non-finite value {value!r}")
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value)
    raise DomainError(f"cannot interpret {value!r} as an exact rational")


def _float_down(q: Fraction) -> float:
    f = float(q)
    if not math.isfinite(f):
        return f
    return f if Fraction(f) <= q else math.nextafter(f, -math.inf)


def _float_up(q: Fraction) -> float:
    f = float(q)
    if not math.isfinite(f):
        return f
    return f if Fraction(f) >= q else math.nextafter(f, math.inf)


def _mpf_to_fraction(raw) -> Fraction:
    """Exact value of an mpmath mpf given its raw (sign, man, exp, bc) tuple."""
    sign, man, exp, _ = raw
    man = int(man)
    if sign:
        man = -man
    return Fraction(man) * Fraction(2) ** int(exp)


@dataclass(frozen=True)
class BoundInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if self.lo > self.hi:
            raise DomainError(f"inverted interval [{self.lo}, {self.hi}]")

    # -- constructors ------------------------------------------------

    @classmethod
    def exact(cls, value) -> "BoundInterval":
        q = as_fraction(value)
        return cls(q, q)

    @classmethod
    def hull_of(cls, items: Iterable["BoundInterval"]) -> "BoundInterval":
        items = list(items)
        if not items:
            raise DomainError("hull of an empty collection")
        return cls(min(x.lo for x in items), max(x.hi for x in items))

    # -- basic queries -----------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def mag(self) -> Fraction:
        """max |x| over the interval."""
        return max(abs(self.lo), abs(self.hi))

    @property
    def mig(self) -> Fraction:
        """min |x| over the interval."""
        if self.lo <= 0 <= self.hi:
            return Fraction(0)
        return min(abs(self.lo), abs(self.hi))

    def contains(self, value) -> bool:
        q = as_fraction(value)
        return self.lo <= q <= self.hi

    def encloses(self, other: "BoundInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "BoundInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def strictly_positive(self) -> bool:
        return self.lo > 0

    def strictly_negative(self) -> bool:
        return self.hi < 0

    def sign_definite(self) -> bool:
        return self.lo > 0 or self.hi < 0

    # -- arithmetic (exact) ------------------------------------------

    @staticmethod
    def _coerce(other) -> "BoundInterval":
        if isinstance(other, BoundInterval):
            return other
        return BoundInterval.exact(other)

    def __add__(self, other) -> "BoundInterval":
        o = self._coerce(other)
        return BoundInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "BoundInterval":
        return BoundInterval(-self.hi, -self.lo)

    def __sub__(self, other) -> "BoundInterval":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "BoundInterval":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "BoundInterval":
        o = self._coerce(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return BoundInterval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "BoundInterval":
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise DomainError(f"division by an interval containing zero: {o}")
        inverses = (1 / o.lo, 1 / o.hi)
        return self * BoundInterval(min(inverses), max(inverses))

    def __rtruediv__(self, other) -> "BoundInterval":
        return self._coerce(other) / self

    def __abs__(self) -> "BoundInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return BoundInterval(Fraction(0), self.mag)

    def __pow__(self, n: int) -> "BoundInterval":
        if not isinstance(n, int):
            raise DomainError("use power() for non-integer exponents")
        if n < 0:
            return 1 / (self ** (-n))
        if n == 0:
            return BoundInterval.exact(1)
        if n % 2 == 1 or self.lo >= 0:
            return BoundInterval(self.lo**n, self.hi**n)
        if self.hi <= 0:
            return BoundInterval(self.hi**n, self.lo**n)
        # even power of a zero-straddling interval
        return BoundInterval(Fraction(0), self.mag**n)

    def hull(self, other: "BoundInterval") -> "BoundInterval":
        return BoundInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def intersect(self, other: "BoundInterval") -> "BoundInterval":
        if not self.intersects(other):
            raise DomainError(f"empty intersection of {self} and {other}")
        return BoundInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def widened(self, slack) -> "BoundInterval":
        """Symmetric outward widening by a nonnegative rational."""
        s = as_fraction(slack)
        if s < 0:
            raise DomainError("negative widening")
        return BoundInterval(self.lo - s, self.hi + s)

    # -- export --------------------------------------------------------

    def lo_float(self) -> float:
        return _float_down(self.lo)

    def hi_float(self) -> float:
        return _float_up(self.hi)

    def __repr__(self) -> str:
        return f"BoundInterval({self.lo_float()!r}, {self.hi_float()!r})"


ZERO = BoundInterval.exact(0)
ONE = BoundInterval.exact(1)


def _to_iv(q: Fraction, ctx) -> "mpmath.ctx_iv.ivmpf":
    return ctx.mpf(q.numerator) / ctx.mpf(q.denominator)


def _from_iv(x) -> BoundInterval:
    lo_raw, hi_raw = x._mpi_
    return BoundInterval(_mpf_to_fraction(lo_raw), _mpf_to_fraction(hi_raw))


def power(base, exponent) -> BoundInterval:
    """Certified enclosure of base**exponent for rational exponents.

    Integer exponents stay exact.  Non-integer exponents require a
    nonnegative base and go through mpmath's interval context at
    working_precision() bits; the result endpoints embed back into
    Fraction exactly, so no certification is lost.
    """
    b = base if isinstance(base, BoundInterval) else BoundInterval.exact(base)
    e = as_fraction(exponent)
    if e.denominator == 1:
        return b ** int(e)
    if b.lo < 0:
        raise DomainError(f"fractional power of a negative-reaching interval {b}")
    if e < 0 and b.lo == 0:
        raise DomainError("negative fractional power of an interval reaching zero")
    ctx = mpmath.iv
    old_prec = ctx.prec
    try:
        ctx.prec = working_precision()
        ive = _to_iv(e, ctx)
        # x |-> x**e is monotone on [0, inf) for either sign of e, so the
        # hull of certified endpoint powers encloses the whole image.
        at_lo = _from_iv(_to_iv(b.lo, ctx) ** ive)
        at_hi = at_lo if b.width == 0 else _from_iv(_to_iv(b.hi, ctx) ** ive)
        out = at_lo.hull(at_hi)
    finally:
        ctx.prec = old_prec
    # x**e with x >= 0 is nonnegative; clamp round-off spill below zero.
    if out.lo < 0:
        out = BoundInterval(Fraction(0), out.hi)
    return out


def root(x, p) -> BoundInterval:
    """Certified p-th root (p a positive rational or integer)."""
    q = as_fraction(p)
    if q <= 0:
        raise DomainError("root index must be positive")
    return power(x, 1 / q)


class PowerFn:
    """Reusable certified x**e for one fixed rational exponent.

    power() pays for context setup and exponent conversion on every
    call; quadrature loops evaluate thousands of powers with the same
    exponent, so this caches both.  Semantics match power() exactly.
    """

    def __init__(self, exponent):
        self.exponent = as_fraction(exponent)
        self._ive_by_prec: dict = {}

    def _exp_interval(self, ctx, prec: int):
        ctx.prec = prec
        ive = self._ive_by_prec.get(prec)
        if ive is None:
            ive = self._ive_by_prec[prec] = _to_iv(self.exponent, ctx)
        return ive

    def __call__(self, base) -> BoundInterval:
        e = self.exponent
        b = base if isinstance(base, BoundInterval) else BoundInterval.exact(base)
        if e.denominator == 1:
            return b ** int(e)
        if b.lo < 0:
            raise DomainError(f"fractional power of a negative-reaching interval {b}")
        if e < 0 and b.lo == 0:
            raise DomainError("negative fractional power of an interval reaching zero")
        ctx = mpmath.iv
        old_prec = ctx.prec
        try:
            ive = self._exp_interval(ctx, working_precision())
            at_lo = _from_iv(_to_iv(b.lo, ctx) ** ive)
            at_hi = at_lo if b.width == 0 else _from_iv(_to_iv(b.hi, ctx) ** ive)
        finally:
            ctx.prec = old_prec
        out = at_lo.hull(at_hi)
        if out.lo < 0:
            out = BoundInterval(Fraction(0), out.hi)
        return out

    def bounds_floats(self, lo: float, hi: float) -> tuple:
        """Directed float bounds on {x**e : lo <= x <= hi} for floats lo, hi.

        Runs at 53 bits (double exports cannot resolve more) and rounds
        the converted endpoints outward, so the returned pair is a
        certified enclosure despite living in machine floats.
        """
        e = self.exponent
        if lo < 0:
            raise DomainError("fractional power of a negative-reaching interval")
        if e < 0 and lo == 0:
            raise DomainError("negative fractional power of an interval reaching zero")
        ctx = mpmath.iv
        old_prec = ctx.prec
        try:
            ive = self._exp_interval(ctx, 53)
            r_lo = ctx.mpf(lo) ** ive
            r_hi = r_lo if hi == lo else ctx.mpf(hi) ** ive
            a_lo, a_hi = r_lo._mpi_
            b_lo, b_hi = r_hi._mpi_
            out_lo = min(_mpf_to_fraction(a_lo), _mpf_to_fraction(b_lo))
            out_hi = max(_mpf_to_fraction(a_hi), _mpf_to_fraction(b_hi))
        finally:
            ctx.prec = old_prec
        return (max(0.0, _float_down(out_lo)), _float_up(out_hi))
