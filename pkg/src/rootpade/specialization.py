"""Specialization to the exponents 0, 1/n, ..., (m-1)/n with equal multiplicity.

With rho_k = rho for every block, row h of the incremented-row matrix gives
polynomials entry(h, k) whose variable is rewritten as w = 1 - z.  With the
substitution w = x^n the remainder of the row becomes a genuine polynomial

    remainder_poly(h)(x) = sum_k entry(h, k)(x^n) * x^{k-1}

with a root of order m*rho at x = 1.  Dividing that root out (an exact
division that doubles as the polynomiality proof) gives the deflated
polynomial; the difference-quotient part in a second variable y and the
two-variable pair form complete the split identity

    pair(x, y) = (x-1)^{m*rho} * deflated(x) + (y-x) * slope(x, y)

which is verified here as an exact coefficientwise identity.  The pair form
evaluated at rational w = x^n and rational y is itself rational: no
irrational number ever enters the exact path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AllZeroError,
    BadParamsError,
    IdentityViolationError,
    RootOfUnityError,
)
from .exact import BiPoly, Poly, as_fraction, y_minus_x
from .pade import ExponentSystem, determinant_delta, increment_rows


@dataclass(frozen=True)
class NthRootSystem:
    """The m x m matrix of row polynomials, rewritten in the variable w = 1-z."""

    n: int
    m: int
    rho: int
    entries: tuple[tuple[Poly, ...], ...]  # entries[h-1][k-1], variable w

    def entry(self, h: int, k: int) -> Poly:
        return self.entries[h - 1][k - 1]

    @property
    def root_order(self) -> int:
        return self.m * self.rho

    def base_exponents(self) -> ExponentSystem:
        return ExponentSystem(
            tuple(Fraction(k, self.n) for k in range(self.m)),
            (self.rho,) * self.m)


def build_system(n: int, m: int, rho: int) -> NthRootSystem:
    """Construct all m rows and change variables to w = 1 - z."""
    if n < 3 or m < 2 or m > n or rho < 1:
        raise BadParamsError(f"need n >= 3, 2 <= m <= n, rho >= 1; got {(n, m, rho)}")
    base = ExponentSystem(
        tuple(Fraction(k, n) for k in range(m)), (rho,) * m)
    det_sys = increment_rows(base)
    entries = tuple(
        tuple(p.compose_affine(1, -1) for p in row.polys)  # z = 1 - w
        for row in det_sys.rows)
    sys_ = NthRootSystem(n, m, rho, entries)
    for h in range(1, m + 1):
        for k in range(1, m + 1):
            expected = rho + (1 if h == k else 0) - 1
            if sys_.entry(h, k).degree != expected:
                raise IdentityViolationError(
                    f"entry ({h},{k}) degree {sys_.entry(h, k).degree}, "
                    f"expected {expected}")
    return sys_


def remainder_poly(sys_: NthRootSystem, h: int) -> Poly:
    """The row remainder as a polynomial in x: sum_k entry(h,k)(x^n) x^{k-1}."""
    _check_row(sys_, h)
    total = Poly()
    for k in range(1, sys_.m + 1):
        total = total + sys_.entry(h, k).stretch(sys_.n).shift_up(k - 1)
    return total


def deflated_poly(sys_: NthRootSystem, h: int) -> Poly:
    """remainder_poly divided by (x-1)^{m*rho}.

    The division must be exact; a nonzero remainder would contradict the
    order-m*rho root at x = 1 and raises immediately.
    """
    rem = remainder_poly(sys_, h)
    divisor = Poly([-1, 1]).pow(sys_.root_order)
    return rem.divexact(divisor)


def slope_poly(sys_: NthRootSystem, h: int) -> BiPoly:
    """Difference-quotient part: sum_k entry(h,k)(x^n) (y^{k-1}-x^{k-1})/(y-x),
    with each quotient expanded as sum_{i+j=k-2} x^i y^j (exact, no division)."""
    _check_row(sys_, h)
    total = BiPoly.zero()
    for k in range(2, sys_.m + 1):
        coeff_poly = BiPoly.from_x_poly(sys_.entry(h, k).stretch(sys_.n))
        spread = BiPoly.zero()
        for i in range(k - 1):
            spread = spread + BiPoly.x_y_term(i, k - 2 - i)
        total = total + coeff_poly * spread
    return total


def pair_poly(sys_: NthRootSystem, h: int) -> BiPoly:
    """Two-variable form: sum_k entry(h,k)(x^n) y^{k-1}."""
    _check_row(sys_, h)
    total = BiPoly.zero()
    for k in range(1, sys_.m + 1):
        coeff_poly = BiPoly.from_x_poly(sys_.entry(h, k).stretch(sys_.n))
        total = total + coeff_poly * BiPoly.x_y_term(0, k - 1)
    return total


@dataclass(frozen=True)
class SplitForms:
    """The verified triple for every row of one system."""

    system: NthRootSystem
    deflated: tuple[Poly, ...]
    slope: tuple[BiPoly, ...]
    pair: tuple[BiPoly, ...]


def split_forms(sys_: NthRootSystem) -> SplitForms:
    """Build deflated/slope/pair for all rows and verify, exactly:

      pair = (x-1)^{m*rho} * deflated + (y-x) * slope     (coefficientwise)
      pair(x, x) = remainder_poly                          (diagonal collapse)
    """
    deflateds, slopes, pairs = [], [], []
    root_factor = BiPoly.from_x_poly(Poly([-1, 1]).pow(sys_.root_order))
    for h in range(1, sys_.m + 1):
        d = deflated_poly(sys_, h)
        s = slope_poly(sys_, h)
        p = pair_poly(sys_, h)
        recombined = root_factor * BiPoly.from_x_poly(d) + y_minus_x() * s
        if recombined != p:
            raise IdentityViolationError(f"split identity failed for row {h}")
        if p.eval_y_diag() != remainder_poly(sys_, h):
            raise IdentityViolationError(f"diagonal collapse failed for row {h}")
        deflateds.append(d)
        slopes.append(s)
        pairs.append(p)
    return SplitForms(sys_, tuple(deflateds), tuple(slopes), tuple(pairs))


def pair_value(sys_: NthRootSystem, h: int, w, y) -> Fraction:
    """Exact rational value of the pair form; only w = x^n and y are needed,
    never x itself."""
    _check_row(sys_, h)
    w = as_fraction(w)
    y = as_fraction(y)
    total = Fraction(0)
    ypow = Fraction(1)
    for k in range(1, sys_.m + 1):
        total += sys_.entry(h, k)(w) * ypow
        ypow *= y
    return total


def select_row(sys_: NthRootSystem, w, y) -> int:
    """Smallest row h with pair_value != 0.

    Guaranteed to exist for w != 1 because the specialized determinant is a
    nonzero multiple of (1-w)^{m*rho}; all rows vanishing is a hard invariant
    violation, not a recoverable condition.
    """
    w = as_fraction(w)
    y = as_fraction(y)
    if w == 1:
        raise RootOfUnityError("w = 1 is excluded (x would be a root of unity)")
    for h in range(1, sys_.m + 1):
        if pair_value(sys_, h, w, y) != 0:
            return h
    raise AllZeroError(
        f"all rows vanished at w={w}, y={y}; contradicts determinant identity")


def specialized_determinant(sys_: NthRootSystem) -> tuple[Fraction, Poly]:
    """Determinant of the w-matrix: must equal delta * (1-w)^{m*rho} exactly,
    where delta is the constant of the z-variable determinant identity."""
    from .pade import poly_matrix_determinant
    det_w = poly_matrix_determinant(sys_.entries)
    delta, _ = determinant_delta(sys_.base_exponents())
    expected = Poly([1, -1]).pow(sys_.root_order).scale(delta)
    if det_w != expected:
        raise IdentityViolationError("specialized determinant shape violated")
    return delta, det_w


def _check_row(sys_: NthRootSystem, h: int) -> None:
    if not 1 <= h <= sys_.m:
        raise BadParamsError(f"row index {h} out of range 1..{sys_.m}")
