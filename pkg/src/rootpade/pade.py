"""Construction of the simultaneous approximation systems and their identities.

An ExponentSystem fixes m rational exponents omega_k (no two differing by an
integer) and m multiplicities rho_k.  There is then a unique family of
polynomials A_k, deg A_k = rho_k - 1, such that

    r(z) = sum_k A_k(z) (1-z)^{omega_k}

vanishes at z = 0 to order sigma - 1 (sigma = sum rho_k) and has the exact
coefficient (rho_1-1)! ... (rho_m-1)! / (sigma-1)! at z^{sigma-1}.

The family is produced here by three independent routes and the results are
required to agree coefficientwise:

  construct_residue   closed form A_k = s * G * sum_h (1-z)^h / Phi'(omega_k+h),
                      where Phi is the product of all linear factors
                      (t - omega_k - h), s = (-1)^(sigma-1), G = prod (rho_k-1)!;
  construct_linsolve  direct nullspace computation of the defining linear
                      conditions over exact rationals (the oracle);
  log_series_form     expansion in powers of log(1-z) with coefficients b_l
                      given by complete homogeneous symmetric functions of the
                      roots of Phi.

The module also builds the m x m matrix obtained by incrementing one
multiplicity per row and verifies that its determinant is exactly a constant
times z^sigma, which is the non-vanishing fact the later selection step
relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import (
    IdentityViolationError,
    InvalidSystemError,
    NotApplicableError,
    SingularSystemError,
)
from .exact import (
    Poly,
    TruncSeries,
    as_fraction,
    binomial_series,
    expand_one_minus_z_power,
    log_series,
)


@dataclass(frozen=True)
class ExponentSystem:
    """Exponents omega and multiplicities rho; validated on construction."""

    omega: tuple[Fraction, ...]
    rho: tuple[int, ...]

    def __post_init__(self):
        omega = tuple(as_fraction(w) for w in self.omega)
        rho = tuple(int(r) for r in self.rho)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "rho", rho)
        if len(omega) < 1 or len(omega) != len(rho):
            raise InvalidSystemError("need matching nonempty omega and rho lists")
        if any(r < 1 for r in rho):
            raise InvalidSystemError("multiplicities must be >= 1")
        for h in range(len(omega)):
            for k in range(h + 1, len(omega)):
                if (omega[h] - omega[k]).denominator == 1:
                    raise InvalidSystemError(
                        f"omega[{h}]-omega[{k}] = {omega[h] - omega[k]} is an integer")

    @property
    def m(self) -> int:
        return len(self.omega)

    @property
    def sigma(self) -> int:
        return sum(self.rho)

    def normalization(self) -> Fraction:
        """prod (rho_k - 1)! / (sigma - 1)!, the pinned leading coefficient."""
        num = 1
        for r in self.rho:
            num *= factorial(r - 1)
        return Fraction(num, factorial(self.sigma - 1))

    def incremented(self, h: int) -> "ExponentSystem":
        """Same exponents with rho_h raised by one (h is 1-based)."""
        if not 1 <= h <= self.m:
            raise InvalidSystemError(f"row index {h} out of range")
        rho = list(self.rho)
        rho[h - 1] += 1
        return ExponentSystem(self.omega, tuple(rho))

    def shifted(self) -> "ExponentSystem":
        """Drop the first block and translate the remaining exponents by
        -(omega_1 + rho_1); this is the system the differentiated remainder
        belongs to."""
        if self.m < 2:
            raise NotApplicableError("no shift exists for a 1-block system")
        delta = self.omega[0] + self.rho[0]
        return ExponentSystem(
            tuple(w - delta for w in self.omega[1:]), self.rho[1:])

    def phi_roots(self) -> list[Fraction]:
        """All sigma roots omega_k + h (k = 1..m, h = 0..rho_k-1) of Phi."""
        return [w + h for w, r in zip(self.omega, self.rho) for h in range(r)]


@dataclass(frozen=True)
class PadeSystem:
    """A constructed system: the polynomials plus the pinned normalization."""

    system: ExponentSystem
    polys: tuple[Poly, ...]
    normalization: Fraction

    def check_invariants(self) -> None:
        """Degrees exact, remainder vanishing to order sigma-1, pinned leading
        coefficient.  Raises IdentityViolationError on any failure."""
        sys_ = self.system
        for k, (p, r) in enumerate(zip(self.polys, sys_.rho), start=1):
            if p.degree != r - 1:
                raise IdentityViolationError(
                    f"deg A_{k} = {p.degree}, expected {r - 1}")
        series = remainder_series(self, sys_.sigma)
        for l in range(sys_.sigma - 1):
            if series[l] != 0:
                raise IdentityViolationError(
                    f"remainder coefficient at z^{l} is {series[l]}, expected 0")
        if series[sys_.sigma - 1] != self.normalization:
            raise IdentityViolationError(
                f"leading remainder coefficient {series[sys_.sigma - 1]} "
                f"!= {self.normalization}")


def _phi_prime(roots: Sequence[Fraction], at: Fraction) -> Fraction:
    """Derivative of prod (t - root) at a point that is itself one of the roots."""
    result = Fraction(1)
    hit = False
    for r in roots:
        d = at - r
        if d == 0:
            if hit:
                return Fraction(0)
            hit = True
            continue
        result *= d
    if not hit:
        raise ValueError("point is not a root")
    return result


def construct_residue(system: ExponentSystem) -> PadeSystem:
    """Closed-form construction from the partial-fraction (residue) formula."""
    sigma = system.sigma
    roots = system.phi_roots()
    sign = Fraction(-1) if (sigma - 1) % 2 else Fraction(1)
    gamma_prod = Fraction(1)
    for r in system.rho:
        gamma_prod *= factorial(r - 1)
    polys = []
    for k in range(system.m):
        acc = Poly()
        for h in range(system.rho[k]):
            denom = _phi_prime(roots, system.omega[k] + h)
            acc = acc + expand_one_minus_z_power(h).scale(1 / denom)
        polys.append(acc.scale(sign * gamma_prod))
    ps = PadeSystem(system, tuple(polys), system.normalization())
    ps.check_invariants()
    return ps


def combine_series(system: ExponentSystem, polys: Sequence[Poly],
                   length: int) -> TruncSeries:
    """sum_k polys[k] * (1-z)^{omega_k} as a truncated series."""
    total = TruncSeries([0], length)
    for w, p in zip(system.omega, polys):
        total = total + (p.to_series(length) * binomial_series(w, length))
    return total


def remainder_series(ps: PadeSystem, length: int) -> TruncSeries:
    """Exact truncated expansion of the remainder sum_k A_k (1-z)^{omega_k}."""
    if length < ps.system.sigma:
        raise ValueError("length must be >= sigma")
    return combine_series(ps.system, ps.polys, length)


def construct_linsolve(system: ExponentSystem, length: int | None = None) -> PadeSystem:
    """Independent construction: solve the defining homogeneous conditions.

    Unknowns are the sigma polynomial coefficients; the sigma-1 equations kill
    the series coefficients below z^{sigma-1}.  The solution space must be
    one-dimensional; anything else means an invalid system slipped through.
    """
    sigma = system.sigma
    if length is None:
        length = sigma
    if length < sigma:
        raise ValueError("length must be >= sigma")
    series = [binomial_series(w, length) for w in system.omega]

    # Column order: (k, j) for k = 1..m, j = 0..rho_k-1.
    columns = [(k, j) for k in range(system.m) for j in range(system.rho[k])]
    matrix = [[series[k][l - j] if l >= j else Fraction(0)
               for (k, j) in columns]
              for l in range(sigma - 1)]

    null = _nullspace(matrix, sigma)
    if len(null) != 1:
        raise SingularSystemError(
            f"solution space has dimension {len(null)}, expected 1")
    vec = null[0]

    lead = Fraction(0)
    for col, (k, j) in enumerate(columns):
        l = sigma - 1 - j
        if 0 <= l < length:
            lead += vec[col] * series[k][l]
    if lead == 0:
        raise SingularSystemError("candidate solution has vanishing pinned coefficient")
    scale = system.normalization() / lead
    vec = [v * scale for v in vec]

    polys = []
    pos = 0
    for k in range(system.m):
        polys.append(Poly(vec[pos:pos + system.rho[k]]))
        pos += system.rho[k]
    ps = PadeSystem(system, tuple(polys), system.normalization())
    ps.check_invariants()
    return ps


def _nullspace(matrix: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the nullspace of a rational matrix (Gauss-Jordan)."""
    rows = [list(r) for r in matrix]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            vec[pc] = -rows[ri][fc]
        basis.append(vec)
    return basis


def symmetric_b_coefficients(system: ExponentSystem, count: int) -> list[Fraction]:
    """b_0..b_{count-1}: complete homogeneous symmetric functions of the roots
    of Phi, i.e. the expansion of prod (1 - root/t)^{-1} in powers of 1/t."""
    b = [Fraction(1)] + [Fraction(0)] * (count - 1)
    for root in system.phi_roots():
        if root == 0:
            continue
        # Multiply by 1/(1 - root/t): forward in-place gives b[l] += root*b[l-1]
        # with b[l-1] already updated, exactly the geometric-factor recurrence.
        for l in range(1, count):
            b[l] += root * b[l - 1]
    return b


def log_series_form(system: ExponentSystem, length: int) -> TruncSeries:
    """Third construction: s * G * sum_l b_l log(1-z)^{sigma+l-1} / (sigma+l-1)!.

    Must agree with the remainder series of the other two constructions
    coefficient by coefficient.
    """
    sigma = system.sigma
    if length < sigma:
        raise ValueError("length must be >= sigma")
    sign = Fraction(-1) if (sigma - 1) % 2 else Fraction(1)
    gamma_prod = Fraction(1)
    for r in system.rho:
        gamma_prod *= factorial(r - 1)
    b = symmetric_b_coefficients(system, length - sigma + 1)

    lg = log_series(length)
    lg_power = lg.pow(sigma - 1)
    total = TruncSeries([0], length)
    for l in range(length - sigma + 1):
        if b[l] != 0:
            total = total + lg_power.scale(b[l] / factorial(sigma + l - 1))
        if l < length - sigma:
            lg_power = lg_power * lg
    return total.scale(sign * gamma_prod)


@dataclass(frozen=True)
class ShiftCheck:
    """Result of comparing the differentiated remainder against the shifted system."""

    matches: bool
    scale: Fraction | None
    lhs: TruncSeries
    rhs: TruncSeries


def differential_shift_check(system: ExponentSystem, length: int) -> ShiftCheck:
    """Differentiate (1-z)^{-omega_1} r(z) rho_1 times termwise and compare with
    the remainder of the dropped-first-block system, up to one global rational
    scale (the scale is (rho_1 - 1)! by the normalization bookkeeping; it is
    reported, not assumed)."""
    if system.m < 2:
        raise NotApplicableError("shift check needs at least two blocks")
    if length < system.sigma + system.rho[0]:
        raise ValueError("length must be >= sigma + rho_1")
    ps = construct_residue(system)

    lhs = TruncSeries([0], length)
    for w, p in zip(system.omega, ps.polys):
        lhs = lhs + (p.to_series(length)
                     * binomial_series(w - system.omega[0], length))
    for _ in range(system.rho[0]):
        lhs = lhs.derivative()

    shifted = system.shifted()
    rhs = remainder_series(construct_residue(shifted), lhs.order)

    i = rhs.first_nonzero()
    if i is None or lhs[i] == 0:
        return ShiftCheck(False, None, lhs, rhs)
    scale = lhs[i] / rhs[i]
    matches = all(lhs[j] == scale * rhs[j] for j in range(lhs.order))
    return ShiftCheck(matches, scale if matches else None, lhs, rhs)


# ---------------------------------------------------------------------------
# incremented-row matrix and its determinant
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeterminantSystem:
    """Row h is the system with rho_h incremented; entry (h, k) is that row's
    k-th polynomial."""

    system: ExponentSystem
    rows: tuple[PadeSystem, ...]

    @property
    def matrix(self) -> tuple[tuple[Poly, ...], ...]:
        return tuple(ps.polys for ps in self.rows)


def increment_rows(system: ExponentSystem) -> DeterminantSystem:
    rows = tuple(construct_residue(system.incremented(h))
                 for h in range(1, system.m + 1))
    for h, ps in enumerate(rows, start=1):
        for k, p in enumerate(ps.polys, start=1):
            expected = system.rho[k - 1] + (1 if h == k else 0) - 1
            if p.degree != expected:
                raise IdentityViolationError(
                    f"deg entry ({h},{k}) = {p.degree}, expected {expected}")
    return DeterminantSystem(system, rows)


def poly_matrix_determinant(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Exact determinant by cofactor expansion (matrices here are tiny)."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = Poly()
    for j in range(n):
        entry = matrix[0][j]
        if entry.is_zero():
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in matrix[1:]]
        term = entry * poly_matrix_determinant(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def determinant_delta(system: ExponentSystem,
                      det_system: DeterminantSystem | None = None
                      ) -> tuple[Fraction, Poly]:
    """Determinant of the incremented-row matrix; must be exactly delta * z^sigma
    with delta != 0.  Any other shape is an implementation bug, reported hard."""
    if det_system is None:
        det_system = increment_rows(system)
    det = poly_matrix_determinant(det_system.matrix)
    sigma = system.sigma
    if det.degree != sigma:
        raise IdentityViolationError(
            f"determinant degree {det.degree}, expected {sigma}")
    for i in range(sigma):
        if det[i] != 0:
            raise IdentityViolationError(
                f"determinant has nonzero coefficient {det[i]} at z^{i}")
    delta = det[sigma]
    if delta == 0:
        raise IdentityViolationError("determinant constant is zero")
    return delta, det


def pairwise_gamma_delta(system: ExponentSystem) -> Fraction:
    """Closed-form product over ordered pairs h != k of
    Gamma(omega_h-omega_k) Gamma(rho_k) / Gamma(rho_k+omega_h-omega_k),
    each factor realized exactly as 1 / rising_factorial(omega_h-omega_k, rho_k).

    Known to differ from determinant_delta by a rational normalization factor;
    both are reported side by side and never forced to agree.
    """
    from .exact import rising_factorial
    result = Fraction(1)
    for h in range(system.m):
        for k in range(system.m):
            if h == k:
                continue
            result /= rising_factorial(system.omega[h] - system.omega[k],
                                       system.rho[k])
    return result


@dataclass(frozen=True)
class DeltaReport:
    determinant: Fraction
    gamma_product: Fraction
    magnitude_ratio: Fraction  # |gamma_product| / |determinant|


def delta_report(system: ExponentSystem) -> DeltaReport:
    """Both delta computations plus their magnitude ratio (sign ambiguity in the
    closed form is resolved by comparing magnitudes only)."""
    det, _ = determinant_delta(system)
    gp = pairwise_gamma_delta(system)
    return DeltaReport(det, gp, abs(gp) / abs(det))
