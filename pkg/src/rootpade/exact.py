"""Exact scalar, polynomial and truncated-power-series arithmetic.

Everything here is built on ``fractions.Fraction``, which already keeps
values in lowest terms with a positive denominator, so rational invariants
hold by construction.  Three containers sit on top of it:

  Poly        dense univariate polynomial, coeffs[i] is the z^i coefficient,
              canonical form stores no trailing zeros;
  BiPoly      dense bivariate polynomial, coeffs[i][j] multiplies x^i y^j,
              canonical form has no trailing all-zero rows or columns;
  TruncSeries truncated formal power series: the first ``order`` coefficients
              are known, everything beyond is unknown (not zero).  Arithmetic
              propagates the minimum order, never silently extending it.

All three are immutable and safe to share across threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions, 'p/q' strings and (num, den) pairs to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, (tuple, list)) and len(value) == 2:
        return Fraction(int(value[0]), int(value[1]))
    raise TypeError(f"cannot interpret {value!r} as a rational")


def binom(n: int, k: int) -> int:
    """Exact binomial coefficient, 0 outside the triangle."""
    if k < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


# ---------------------------------------------------------------------------
# scalar operations
# ---------------------------------------------------------------------------

def falling_factorial(z: Rational, omega: Rational, rho: int) -> Fraction:
    """Product (z-omega)(z-omega-1)...(z-omega-rho+1), exactly."""
    if rho < 1:
        raise ValueError("rho must be >= 1")
    z = as_fraction(z)
    omega = as_fraction(omega)
    result = _ONE
    for h in range(rho):
        result *= z - omega - h
    return result


def falling_factorial_derivative(z: Rational, omega: Rational, rho: int) -> Fraction:
    """d/dz of the falling-factorial product, as a sum over omitted factors.

    When z = omega + h0 for an integer 0 <= h0 < rho exactly one factor
    vanishes and the derivative collapses to the product over the others.
    """
    if rho < 1:
        raise ValueError("rho must be >= 1")
    z = as_fraction(z)
    omega = as_fraction(omega)
    factors = [z - omega - h for h in range(rho)]
    zeros = [h for h, f in enumerate(factors) if f == 0]
    if len(zeros) >= 2:
        return _ZERO
    if len(zeros) == 1:
        h0 = zeros[0]
        result = _ONE
        for h, f in enumerate(factors):
            if h != h0:
                result *= f
        return result
    total = _ZERO
    full = _ONE
    for f in factors:
        full *= f
    for f in factors:
        total += full / f
    return total


def rising_factorial(z: Rational, count: int) -> Fraction:
    """Product z(z+1)...(z+count-1); equals Gamma(z+count)/Gamma(z) for rational z."""
    if count < 0:
        raise ValueError("count must be >= 0")
    z = as_fraction(z)
    result = _ONE
    for j in range(count):
        result *= z + j
    return result


# ---------------------------------------------------------------------------
# truncated power series
# ---------------------------------------------------------------------------

class TruncSeries:
    """Truncated power series: coefficients for z^0 .. z^(order-1)."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[Rational], order: int | None = None):
        cs = [as_fraction(c) for c in coeffs]
        if order is None:
            order = len(cs)
        if order < 1:
            raise ValueError("order must be >= 1")
        if len(cs) < order:
            cs += [_ZERO] * (order - len(cs))
        elif len(cs) > order:
            cs = cs[:order]
        self.coeffs = tuple(cs)
        self.order = order

    def __repr__(self):
        return f"TruncSeries({list(self.coeffs)}, order={self.order})"

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(self.coeffs[:order], order)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        order = min(self.order, other.order)
        return TruncSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(order)], order)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        order = min(self.order, other.order)
        return TruncSeries(
            [self.coeffs[i] - other.coeffs[i] for i in range(order)], order)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-c for c in self.coeffs], self.order)

    def scale(self, c: Rational) -> "TruncSeries":
        c = as_fraction(c)
        return TruncSeries([c * a for a in self.coeffs], self.order)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        # The product of series known mod z^La and mod z^Lb is known only
        # mod z^min(La, Lb): min-order propagation.
        order = min(self.order, other.order)
        out = [_ZERO] * order
        for i, a in enumerate(self.coeffs[:order]):
            if a == 0:
                continue
            for j in range(order - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncSeries(out, order)

    def pow(self, e: int) -> "TruncSeries":
        """e-th power (e >= 0), same truncation order."""
        if e < 0:
            raise ValueError("negative powers not supported")
        result = TruncSeries([_ONE], self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def derivative(self) -> "TruncSeries":
        """Termwise derivative; the truncation order drops by one."""
        if self.order < 2:
            raise ValueError("cannot differentiate below order 2")
        return TruncSeries(
            [(i + 1) * self.coeffs[i + 1] for i in range(self.order - 1)],
            self.order - 1)

    def first_nonzero(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None


def binomial_series(omega: Rational, length: int) -> TruncSeries:
    """First ``length`` coefficients of (1-z)^omega.

    Uses the recurrence c0 = 1, c_{j+1} = c_j (j - omega)/(j + 1), which is
    the generalized binomial theorem written without any Gamma evaluation.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    omega = as_fraction(omega)
    coeffs = [_ONE]
    for j in range(length - 1):
        coeffs.append(coeffs[-1] * (j - omega) / (j + 1))
    return TruncSeries(coeffs, length)


def log_series(length: int) -> TruncSeries:
    """Series of log(1-z): 0 - z - z^2/2 - z^3/3 - ..."""
    if length < 1:
        raise ValueError("length must be >= 1")
    coeffs = [_ZERO] + [Fraction(-1, j) for j in range(1, length)]
    return TruncSeries(coeffs, length)


# ---------------------------------------------------------------------------
# dense univariate polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Dense univariate polynomial over Fraction, canonical (no trailing zeros)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c: Rational) -> "Poly":
        return Poly([as_fraction(c)])

    @staticmethod
    def x_power(k: int, c: Rational = 1) -> "Poly":
        return Poly([_ZERO] * k + [as_fraction(c)])

    @property
    def degree(self):
        """Degree as an int; the zero polynomial reports -inf."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        return "Poly(" + " + ".join(terms) + ")"

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else _ZERO

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] - other[i] for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def scale(self, c: Rational) -> "Poly":
        c = as_fraction(c)
        return Poly([c * a for a in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    out[i + j] += a * b
        return Poly(out)

    def pow(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative powers not supported")
        result = Poly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, point):
        """Horner evaluation; works for Fraction and for anything supporting * and +."""
        if not self.coeffs:
            if isinstance(point, (int, Fraction)):
                return _ZERO
            return point * 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * point + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([(i + 1) * self.coeffs[i + 1]
                     for i in range(len(self.coeffs) - 1)])

    def compose_affine(self, c0: Rational, c1: Rational) -> "Poly":
        """Substitute z <- c0 + c1*t, returning a polynomial in t (Horner)."""
        lin = Poly([c0, c1])
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * lin + Poly.const(c)
        return acc

    def stretch(self, n: int) -> "Poly":
        """Substitute z <- z^n."""
        if n < 1:
            raise ValueError("stretch factor must be >= 1")
        if not self.coeffs:
            return Poly()
        out = [_ZERO] * ((len(self.coeffs) - 1) * n + 1)
        for i, c in enumerate(self.coeffs):
            out[i * n] = c
        return Poly(out)

    def shift_up(self, k: int) -> "Poly":
        """Multiply by z^k."""
        if not self.coeffs:
            return Poly()
        return Poly([_ZERO] * k + list(self.coeffs))

    def divexact(self, divisor: "Poly") -> "Poly":
        """Exact division; raises NonDivisibleError (with the remainder) otherwise."""
        from .errors import NonDivisibleError
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return Poly()
        rem = list(self.coeffs)
        dc = divisor.coeffs
        dd = len(dc) - 1
        lead = dc[-1]
        if len(rem) - 1 < dd:
            raise NonDivisibleError("degree too small", remainder=self)
        qt = [_ZERO] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = c / lead
            qt[i - dd] = q
            for j, d in enumerate(dc):
                rem[i - dd + j] -= q * d
        if any(c != 0 for c in rem):
            raise NonDivisibleError("nonzero remainder", remainder=Poly(rem))
        return Poly(qt)

    def to_series(self, order: int) -> TruncSeries:
        return TruncSeries([self[i] for i in range(order)], order)

    def denominator_lcm(self) -> int:
        """LCM of the coefficient denominators (1 for the zero polynomial)."""
        from math import lcm
        result = 1
        for c in self.coeffs:
            result = lcm(result, c.denominator)
        return result


def expand_one_minus_z_power(h: int) -> Poly:
    """(1-z)^h as an explicit polynomial."""
    return Poly([Fraction((-1) ** j * binom(h, j)) for j in range(h + 1)])


# ---------------------------------------------------------------------------
# dense bivariate polynomials
# ---------------------------------------------------------------------------

class BiPoly:
    """Dense bivariate polynomial; rows index powers of x, columns powers of y."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[Rational]] = ()):
        table = [[as_fraction(c) for c in row] for row in rows]
        width = max((len(r) for r in table), default=0)
        for r in table:
            r.extend([_ZERO] * (width - len(r)))
        while table and all(c == 0 for c in table[-1]):
            table.pop()
        if table:
            while table[0] and all(r[-1] == 0 for r in table):
                for r in table:
                    r.pop()
            if not table[0]:
                table = []
        self.rows = tuple(tuple(r) for r in table)

    @staticmethod
    def zero() -> "BiPoly":
        return BiPoly()

    @staticmethod
    def from_x_poly(p: Poly) -> "BiPoly":
        return BiPoly([[c] for c in p.coeffs])

    @staticmethod
    def x_y_term(i: int, j: int, c: Rational = 1) -> "BiPoly":
        rows = [[_ZERO] * (j + 1) for _ in range(i + 1)]
        rows[i][j] = as_fraction(c)
        return BiPoly(rows)

    def is_zero(self) -> bool:
        return not self.rows

    def coeff(self, i: int, j: int) -> Fraction:
        if 0 <= i < len(self.rows) and 0 <= j < len(self.rows[i]):
            return self.rows[i][j]
        return _ZERO

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        if not self.rows:
            return "BiPoly(0)"
        terms = [f"{c}*x^{i}y^{j}"
                 for i, row in enumerate(self.rows)
                 for j, c in enumerate(row) if c != 0]
        return "BiPoly(" + " + ".join(terms) + ")"

    def _padded(self, nr: int, nc: int):
        out = [[_ZERO] * nc for _ in range(nr)]
        for i, row in enumerate(self.rows):
            for j, c in enumerate(row):
                out[i][j] = c
        return out

    def __add__(self, other: "BiPoly") -> "BiPoly":
        nr = max(len(self.rows), len(other.rows))
        nc = max(len(self.rows[0]) if self.rows else 0,
                 len(other.rows[0]) if other.rows else 0)
        a = self._padded(nr, nc)
        b = other._padded(nr, nc)
        return BiPoly([[a[i][j] + b[i][j] for j in range(nc)] for i in range(nr)])

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + other.scale(-1)

    def scale(self, c: Rational) -> "BiPoly":
        c = as_fraction(c)
        return BiPoly([[c * v for v in row] for row in self.rows])

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        if self.is_zero() or other.is_zero():
            return BiPoly()
        nr = len(self.rows) + len(other.rows) - 1
        nc = len(self.rows[0]) + len(other.rows[0]) - 1
        out = [[_ZERO] * nc for _ in range(nr)]
        for i, row in enumerate(self.rows):
            for j, a in enumerate(row):
                if a == 0:
                    continue
                for k, orow in enumerate(other.rows):
                    for l, b in enumerate(orow):
                        if b != 0:
                            out[i + k][j + l] += a * b
        return BiPoly(out)

    def eval(self, x, y):
        """Evaluate at scalars (or intervals): Horner in y inside Horner in x."""
        if not self.rows:
            if isinstance(x, (int, Fraction)):
                return _ZERO
            return x * 0
        acc = None
        for row in reversed(self.rows):
            racc = None
            for c in reversed(row):
                racc = c if racc is None else racc * y + c
            acc = racc if acc is None else acc * x + racc
        return acc

    def eval_y_diag(self) -> Poly:
        """Substitute y = x, collapsing to a univariate polynomial."""
        out = {}
        for i, row in enumerate(self.rows):
            for j, c in enumerate(row):
                if c != 0:
                    out[i + j] = out.get(i + j, _ZERO) + c
        if not out:
            return Poly()
        cs = [_ZERO] * (max(out) + 1)
        for k, v in out.items():
            cs[k] = v
        return Poly(cs)

    def x_degree(self):
        return len(self.rows) - 1 if self.rows else float("-inf")

    def y_degree(self):
        return len(self.rows[0]) - 1 if self.rows else float("-inf")

    def denominator_lcm(self) -> int:
        from math import lcm
        result = 1
        for row in self.rows:
            for c in row:
                result = lcm(result, c.denominator)
        return result


def y_minus_x() -> BiPoly:
    return BiPoly([[_ZERO, _ONE], [Fraction(-1), _ZERO]])
