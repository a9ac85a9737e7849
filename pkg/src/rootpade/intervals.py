"""Rigorous enclosures with exact rational endpoints.

An Interval is a pair lo <= hi of Fractions together with the precision (in
bits) its seeds were computed at.  Field operations on rational endpoints are
carried out exactly, which is the strongest possible form of outward
rounding; the only places genuine rounding happens are

  * the dyadic quantization ``outward(prec)``, used to keep endpoint sizes
    bounded in long pipelines (lo rounds down, hi rounds up, always), and
  * the seed constructors for irrational values: n-th roots of rationals
    (floor/ceil integer n-th roots on a scaled grid), pi (Machin arctangent
    sums with alternating-series remainder brackets), and sine on [0, pi]
    (alternating Taylor brackets, endpoint minimum justified by concavity).

Refining the precision never widens any seed, so enclosures shrink
monotonically under refinement.  Comparisons that a caller cannot resolve at
its precision cap must be reported as indeterminate, never guessed; the
helper ``resolve`` implements that doubling loop.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .errors import IndeterminateError
from .exact import as_fraction

DEFAULT_PREC = 256
PREC_FLOOR = 64
PREC_CAP = 4096


def integer_nth_root(value: int, n: int) -> int:
    """floor(value^(1/n)) for value >= 0, n >= 1, by Newton iteration with a
    final exact adjustment loop (the certification step)."""
    if value < 0:
        raise ValueError("negative radicand")
    if n < 1:
        raise ValueError("root order must be >= 1")
    if value in (0, 1) or n == 1:
        return value
    x = 1 << (value.bit_length() // n + 1)
    while True:
        y = ((n - 1) * x + value // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    # Newton overshoot/undershoot can be off by a step near powers: fix exactly.
    while x ** n > value:
        x -= 1
    while (x + 1) ** n <= value:
        x += 1
    return x


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


class Interval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi=None, prec: int = DEFAULT_PREC):
        lo = as_fraction(lo)
        hi = lo if hi is None else as_fraction(hi)
        if lo > hi:
            raise ValueError(f"inverted interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.prec = prec

    @staticmethod
    def point(v, prec: int = DEFAULT_PREC) -> "Interval":
        v = as_fraction(v)
        return Interval(v, v, prec)

    def __repr__(self):
        return f"Interval({self.lo}, {self.hi}, prec={self.prec})"

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, v) -> bool:
        v = as_fraction(v)
        return self.lo <= v <= self.hi

    def encloses(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def _with(self, lo: Fraction, hi: Fraction, other=None) -> "Interval":
        prec = self.prec if other is None else min(self.prec, other.prec)
        return Interval(lo, hi, prec)

    @staticmethod
    def _coerce(v) -> "Interval":
        if isinstance(v, Interval):
            return v
        return Interval.point(v, PREC_CAP)

    def __add__(self, other):
        o = Interval._coerce(other)
        return self._with(self.lo + o.lo, self.hi + o.hi, o)

    __radd__ = __add__

    def __sub__(self, other):
        o = Interval._coerce(other)
        return self._with(self.lo - o.hi, self.hi - o.lo, o)

    def __rsub__(self, other):
        return Interval._coerce(other) - self

    def __neg__(self):
        return Interval(-self.hi, -self.lo, self.prec)

    def __mul__(self, other):
        o = Interval._coerce(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return self._with(min(products), max(products), o)

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval straddles zero")
        return Interval(1 / self.hi, 1 / self.lo, self.prec)

    def __truediv__(self, other):
        return self * Interval._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return Interval._coerce(other) * self.reciprocal()

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lo, self.hi), self.prec)

    def pow(self, e: int) -> "Interval":
        """Integer power with sign handling."""
        if e < 0:
            return self.pow(-e).reciprocal()
        if e == 0:
            return Interval.point(1, self.prec)
        if e % 2 == 1 or self.lo >= 0:
            return Interval(self.lo ** e, self.hi ** e, self.prec)
        if self.hi <= 0:
            return Interval(self.hi ** e, self.lo ** e, self.prec)
        return Interval(Fraction(0), max(self.lo ** e, self.hi ** e), self.prec)

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi),
                        min(self.prec, other.prec))

    def outward(self, prec: int) -> "Interval":
        """Round endpoints outward onto a dyadic grid with about ``prec``
        significant bits relative to the interval magnitude."""
        scale = max(abs(self.lo), abs(self.hi))
        if scale == 0:
            return Interval(Fraction(0), Fraction(0), prec)
        exp = scale.numerator.bit_length() - scale.denominator.bit_length()
        shift = prec - exp
        if shift <= 0:
            shift = 1
        denom = 1 << shift
        lo = Fraction(_floor_div(self.lo.numerator * denom, self.lo.denominator), denom)
        hi = Fraction(_ceil_div(self.hi.numerator * denom, self.hi.denominator), denom)
        return Interval(lo, hi, min(self.prec, prec))

    # three-valued comparisons: True / False when certain, None when unresolved

    def compare_gt(self, threshold) -> bool | None:
        t = as_fraction(threshold)
        if self.lo > t:
            return True
        if self.hi <= t:
            return False
        return None

    def compare_lt(self, threshold) -> bool | None:
        t = as_fraction(threshold)
        if self.hi < t:
            return True
        if self.lo >= t:
            return False
        return None

    def compare_le(self, threshold) -> bool | None:
        t = as_fraction(threshold)
        if self.hi <= t:
            return True
        if self.lo > t:
            return False
        return None


def resolve(builder: Callable[[int], object], prec: int = DEFAULT_PREC,
            cap: int = PREC_CAP, what: str = "comparison"):
    """Run ``builder`` at doubling precisions until it returns a verdict.

    ``builder(prec)`` recomputes its comparison from scratch at the given
    precision and returns any non-None verdict when certain, None while the
    enclosures still overlap.  Hitting the cap raises IndeterminateError:
    unresolved comparisons are reported, never guessed.
    """
    p = max(PREC_FLOOR, prec)
    while True:
        verdict = builder(p)
        if verdict is not None:
            return verdict
        if p >= cap:
            raise IndeterminateError(f"{what} unresolved at precision cap {cap}",
                                     prec=p)
        p = min(2 * p, cap)


# ---------------------------------------------------------------------------
# seed constructors
# ---------------------------------------------------------------------------

def nth_root_interval(a: int, b: int, n: int, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of (a/b)^(1/n) for a, b >= 1 on a dyadic grid.

    The guard bits make the relative width at most 2^-(prec-4) even when the
    value is far below 1; refinement is monotone because finer floor/ceil
    grids nest.
    """
    if a < 1 or b < 1:
        raise ValueError("radicand must be a positive rational")
    if n < 1:
        raise ValueError("root order must be >= 1")
    if a == b:
        return Interval(Fraction(1), Fraction(1), prec)
    # Guard shift: if a/b < 1 the root is at least (1/b)^(1/n); compensate.
    guard = 8 + (b.bit_length() // n + 1 if a < b else 0)
    shift = prec + guard
    scaled_lo = (a << (n * shift)) // b
    lo_int = integer_nth_root(scaled_lo, n)
    scaled_hi = _ceil_div(a << (n * shift), b)
    hi_root = integer_nth_root(scaled_hi, n)
    if hi_root ** n * b == (a << (n * shift)) and scaled_hi == scaled_lo:
        hi_int = hi_root
    else:
        hi_int = hi_root + 1
    denom = 1 << shift
    return Interval(Fraction(lo_int, denom), Fraction(hi_int, denom), prec)


def _arctan_recip(x: int, prec: int) -> Interval:
    """Enclosure of arctan(1/x) for integer x >= 2 via the alternating
    Taylor series; the first omitted term brackets the error."""
    target = Fraction(1, 1 << (prec + 8))
    total = Fraction(0)
    k = 0
    while True:
        term = Fraction(1, (2 * k + 1) * x ** (2 * k + 1))
        if k % 2:
            total -= term
        else:
            total += term
        nxt = Fraction(1, (2 * k + 3) * x ** (2 * k + 3))
        if nxt < target:
            if k % 2:
                return Interval(total, total + nxt, prec)
            return Interval(total - nxt, total, prec)
        k += 1


def pi_interval(prec: int = DEFAULT_PREC) -> Interval:
    """pi = 16 arctan(1/5) - 4 arctan(1/239), each term rigorously bracketed."""
    t1 = _arctan_recip(5, prec + 6)
    t2 = _arctan_recip(239, prec + 6)
    result = t1 * 16 - t2 * 4
    return Interval(result.lo, result.hi, prec).outward(prec + 4)


def _sin_point(t: Fraction, prec: int) -> Interval:
    """Alternating Taylor enclosure of sin(t) for rational 0 <= t <= 4."""
    if t < 0 or t > 4:
        raise ValueError("sin enclosure implemented for 0 <= t <= 4 only")
    target = Fraction(1, 1 << (prec + 8))
    total = Fraction(0)
    term = t  # t^(2k+1)/(2k+1)! starting at k = 0
    k = 0
    while True:
        if k % 2:
            total -= term
        else:
            total += term
        nxt = term * t * t / ((2 * k + 2) * (2 * k + 3))
        # Terms decrease strictly once (2k+2)(2k+3) > t^2, true for k >= 2
        # when t <= 4; only then does the first-omitted-term bound apply.
        if k >= 2 and nxt < target:
            if k % 2:
                return Interval(total, total + nxt)
            return Interval(total - nxt, total)
        term = nxt
        k += 1


def sin_interval(t: Interval, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of sin over an interval contained in [0, pi].

    sin is concave there, so the minimum over [t] sits at an endpoint; the
    maximum is the endpoint maximum unless pi/2 may lie inside, in which case
    1 is a valid ceiling.
    """
    pi = pi_interval(prec)
    if t.lo < 0 or t.hi > pi.lo:
        raise ValueError("sin_interval requires the argument inside [0, pi]")
    at_lo = _sin_point(t.lo, prec)
    at_hi = _sin_point(t.hi, prec)
    lo = min(at_lo.lo, at_hi.lo)
    half_pi = pi * Fraction(1, 2)
    if t.lo <= half_pi.hi and t.hi >= half_pi.lo:
        hi = Fraction(1)
    else:
        hi = max(at_lo.hi, at_hi.hi)
    return Interval(lo, hi, min(t.prec, prec))


def eval_poly_interval(poly, x: Interval) -> Interval:
    """Horner evaluation of an exact-rational polynomial at an interval point."""
    acc = Interval.point(0, x.prec)
    for c in reversed(poly.coeffs):
        acc = acc * x + Interval.point(c, x.prec)
    return acc


def eval_bipoly_interval(bipoly, x: Interval, y: Interval) -> Interval:
    """Nested Horner evaluation of a bivariate exact-rational polynomial."""
    prec = min(x.prec, y.prec)
    acc = Interval.point(0, prec)
    for row in reversed(bipoly.rows):
        racc = Interval.point(0, prec)
        for c in reversed(row):
            racc = racc * y + Interval.point(c, prec)
        acc = acc * x + racc
    return acc
