"""Finiteness certificates and their empirical stress tests.

Given xi = (a/b)^(1/n) of exact degree n, a block count m and a positive
rational eps, the target exponent is mu = n/m + m - 1 + eps.  For any two
band fractions p1/q1, p2/q2 the two obstruction quantities

    theta1 = c4^rho q1^(n rho + m - 1) q2^(m - 1) |xi - p1/q1|^(m rho)
    theta2 = c5^rho q1^(n rho + m - 1) q2^(m - 1) |xi - p2/q2|

(with rho pinned by q1^(m(rho-1)) < q2 <= q1^(m rho)) satisfy
theta1 + theta2 > 2.  If both fractions also satisfied |xi - p/q| <= q^-mu
with q1 above an explicit threshold and q2 above an explicit power of q1,
exact exponent bookkeeping would force theta1 <= 1 and theta2 <= 1.  The
certificate emitted here packages the constants, the thresholds and that
bookkeeping; the continued-fraction hunter then feeds every convergent pair
through the same machinery and reports any violation (expected: none).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor, gcd

from .bounds import BoundConstants, bound_constants, check_exact_degree
from .errors import (
    BadParamsError,
    DegenerateSandwichError,
    IndeterminateError,
    IndeterminatePartialQuotientError,
    InvariantViolationError,
)
from .exact import as_fraction
from .intervals import (
    DEFAULT_PREC,
    PREC_CAP,
    PREC_FLOOR,
    Interval,
    integer_nth_root,
    nth_root_interval,
    resolve,
)
from .specialization import build_system, pair_value, select_row


@lru_cache(maxsize=None)
def _xi_interval(a: int, b: int, n: int, prec: int) -> Interval:
    return nth_root_interval(a, b, n, prec)


@dataclass(frozen=True)
class Target:
    """An n-th root target with its approximation exponent."""

    a: int
    b: int
    n: int
    m: int
    eps: Fraction
    prec: int = DEFAULT_PREC

    def __post_init__(self):
        object.__setattr__(self, "eps", as_fraction(self.eps))
        if self.a < 1 or self.b < 1:
            raise BadParamsError("a and b must be positive integers")
        if gcd(self.a, self.b) != 1:
            raise BadParamsError("a/b must be in lowest terms")
        if self.n < 3:
            raise BadParamsError("n must be >= 3")
        if not 2 <= self.m <= self.n:
            raise BadParamsError("need 2 <= m <= n")
        if self.eps <= 0:
            raise BadParamsError("eps must be positive")
        if not PREC_FLOOR <= self.prec <= PREC_CAP:
            raise BadParamsError(f"precision must lie in [{PREC_FLOOR}, {PREC_CAP}]")
        check_exact_degree(self.a, self.b, self.n)

    @property
    def mu(self) -> Fraction:
        return Fraction(self.n, self.m) + self.m - 1 + self.eps

    def xi_interval(self, prec: int | None = None) -> Interval:
        return _xi_interval(self.a, self.b, self.n, prec or self.prec)

    def constants(self) -> BoundConstants:
        return _constants_cached(self.a, self.b, self.n, self.m, self.prec)


@lru_cache(maxsize=None)
def _constants_cached(a: int, b: int, n: int, m: int, prec: int) -> BoundConstants:
    return bound_constants(n, m, a, b, prec)


def band_check(p: int, q: int, target: Target) -> bool:
    """Is (2/3)^(1/n) xi <= p/q <= (3/2)^(1/n) xi?  Both endpoints are n-th
    roots of exact rationals (2a/3b and 3a/2b), so the comparison refines
    until it resolves; endpoints are irrational for degree-n targets, so it
    always does below the cap."""
    if q <= 0:
        raise BadParamsError("q must be positive")
    v = Fraction(p, q)

    def builder(prec):
        lo = nth_root_interval(2 * target.a, 3 * target.b, target.n, prec)
        hi = nth_root_interval(3 * target.a, 2 * target.b, target.n, prec)
        if lo.hi <= v <= hi.lo:
            return True
        if v < lo.lo or v > hi.hi:
            return False
        return None

    return resolve(builder, target.prec, PREC_CAP, what=f"band check {p}/{q}")


def select_rho(q1: int, q2: int, m: int) -> int:
    """The unique rho >= 1 with q1^(m(rho-1)) < q2 <= q1^(m rho), by exact
    integer arithmetic."""
    if q1 < 1 or q2 < 1:
        raise BadParamsError("denominators must be positive")
    if q1 == 1:
        raise DegenerateSandwichError("q1 = 1 makes the sandwich degenerate")
    if q2 == 1:
        # q1^0 = 1 < q2 already fails; no natural rho exists.
        raise DegenerateSandwichError("q2 = 1 admits no block count")
    rho = 1
    power = q1 ** m
    while power < q2:
        power *= q1 ** m
        rho += 1
    assert q1 ** (m * (rho - 1)) < q2 <= q1 ** (m * rho)
    return rho


@dataclass(frozen=True)
class ApproxPair:
    """A certified evaluation of the obstruction pair for two band fractions."""

    p1: int
    q1: int
    p2: int
    q2: int
    rho: int
    h0: int
    pair_val: Fraction
    theta1: Interval
    theta2: Interval
    sum_exceeds_two: bool
    max_exceeds_one: bool


def _theta_intervals(target: Target, consts: BoundConstants, rho: int,
                     p1: int, q1: int, p2: int, q2: int,
                     prec: int) -> tuple[Interval, Interval]:
    n, m = target.n, target.m
    xi = target.xi_interval(prec)
    e1 = abs(xi - Fraction(p1, q1))
    e2 = abs(xi - Fraction(p2, q2))
    scale = q1 ** (n * rho + m - 1) * q2 ** (m - 1)
    th1 = e1.pow(m * rho) * (consts.c4.value ** rho * scale)
    th2 = e2 * (consts.c5.value ** rho * scale)
    return th1.outward(prec), th2.outward(prec)


def theta_pair(target: Target, p1: int, q1: int, p2: int, q2: int,
               rho: int | None = None) -> ApproxPair:
    """Evaluate the obstruction pair; assert the certified postconditions.

    ``rho=None`` applies the sandwich selection; passing rho explicitly is the
    diagnostic mode (used to pin exact worked values at rho = 1 independently
    of the selection rule).
    """
    for p, q in ((p1, q1), (p2, q2)):
        if not band_check(p, q, target):
            raise BadParamsError(f"{p}/{q} is outside the band")
    rho_sel = select_rho(q1, q2, target.m) if rho is None else rho
    if rho_sel < 1:
        raise BadParamsError("rho must be >= 1")
    system = build_system(target.n, target.m, rho_sel)
    w = Fraction(target.a * q1 ** target.n, target.b * p1 ** target.n)
    y = Fraction(q1 * p2, p1 * q2)
    h0 = select_row(system, w, y)
    value = pair_value(system, h0, w, y)
    consts = target.constants()

    final_prec = target.prec

    def sum_builder(prec):
        nonlocal final_prec
        final_prec = prec
        th1, th2 = _theta_intervals(target, consts, rho_sel, p1, q1, p2, q2, prec)
        return (th1 + th2).compare_gt(2)

    sum_ok = resolve(sum_builder, target.prec, PREC_CAP, what="theta sum > 2")
    th1, th2 = _theta_intervals(target, consts, rho_sel, p1, q1, p2, q2, final_prec)
    if not sum_ok:
        raise InvariantViolationError(
            "theta1 + theta2 <= 2 resolved true; this falsifies the constant "
            "derivation",
            theta1=(str(th1.lo), str(th1.hi)), theta2=(str(th2.lo), str(th2.hi)),
            constants={k: str(getattr(consts, k).value)
                       for k in ("c1", "c2", "c3", "c4", "c5")},
            inputs=(p1, q1, p2, q2, rho_sel))

    def max_builder(prec):
        a1, a2 = _theta_intervals(target, consts, rho_sel, p1, q1, p2, q2, prec)
        if a1.lo > 1 or a2.lo > 1:
            return True
        if a1.hi <= 1 and a2.hi <= 1:
            return False
        return None

    max_ok = resolve(max_builder, target.prec, PREC_CAP, what="theta max > 1")
    if not max_ok:
        raise InvariantViolationError("max(theta1, theta2) <= 1 resolved true")
    return ApproxPair(p1, q1, p2, q2, rho_sel, h0, value, th1, th2,
                      sum_ok, max_ok)


# ---------------------------------------------------------------------------
# the gap certificate
# ---------------------------------------------------------------------------

def _ceil_rational_power(base: Fraction, exponent: Fraction) -> int:
    """Smallest integer >= base**exponent for base >= 1, exponent > 0."""
    if base < 1:
        return 1
    u, v = exponent.numerator, exponent.denominator
    t = base ** u
    g = integer_nth_root(t.numerator // t.denominator, v)
    while Fraction(g) ** v < t:
        g += 1
    while g >= 1 and Fraction(g - 1) ** v >= t:
        g -= 1
    return g


def exponent_chain(n: int, m: int, eps: Fraction) -> tuple[str, ...]:
    """Re-derive the two displayed theta bounds by exact exponent arithmetic.

    Exponents of q1 are tracked as linear forms alpha + beta*rho over the
    rationals; every step is an identity or an inequality of such forms valid
    for all rho >= 1 (checked at rho = 1 plus slope comparison).  Any failure
    raises: the certificate's bookkeeping is machine-checked, not assumed.
    """
    eps = as_fraction(eps)
    mu = Fraction(n, m) + m - 1 + eps
    lines = [f"mu = n/m + m - 1 + eps = {mu}"]

    def linform(const: Fraction, slope: Fraction) -> tuple[Fraction, Fraction]:
        return (as_fraction(const), as_fraction(slope))

    def le_for_all_rho(aform, bform) -> bool:
        # alpha_a + beta_a rho <= alpha_b + beta_b rho for every rho >= 1
        return (aform[0] + aform[1] <= bform[0] + bform[1]
                and aform[1] <= bform[1])

    # theta1: q1 exponent after |xi - p1/q1|^(m rho) <= q1^(-m rho mu)
    e1 = linform(m - 1, n - m * mu)
    e1_expected = linform(m - 1, -m * (m - 1) - m * eps)
    if e1 != e1_expected:
        raise InvariantViolationError("theta1 exponent identity failed")
    lines.append(
        "theta1: exponent of q1 is (m-1) + (n - m*mu)rho = "
        f"(m-1) - m(m-1)rho - m eps rho  [checked: {e1}]")
    # absorb q2^(m-1) <= q1^(m rho (m-1)); the leftover -m eps rho splits
    # evenly, half staying on q1 (the per-rho factor), half converting to
    # q2^(-eps/2) through q2 <= q1^(m rho)
    if e1_expected[1] + m * (m - 1) != 2 * (-m * eps / 2):
        raise InvariantViolationError("theta1 split bookkeeping failed")
    lines.append(
        "q2^(m-1) <= q1^(m rho (m-1)) cancels the -m(m-1)rho term; "
        "q1^(-m eps rho / 2) <= q2^(-eps/2): "
        "theta1 <= q1^(m-1) q2^(-eps/2) (c4 q1^(-m eps/2))^rho")

    # theta2: q2 exponent is (m-1) - mu = -n/m - eps
    q2_exp = Fraction(m - 1) - mu
    if q2_exp != -Fraction(n, m) - eps:
        raise InvariantViolationError("theta2 q2-exponent identity failed")
    lines.append(f"theta2: exponent of q2 is (m-1) - mu = {q2_exp}")
    # q2^(-n/m) < q1^(-n(rho-1)); q2^(-eps/2) kept; q2^(-eps/2) < q1^(-m(rho-1)eps/2)
    e2 = linform(n + m - 1 + m * eps / 2, -m * eps / 2)
    e2_display = linform(n + m + m * eps - 1, -m * eps / 2)
    if not le_for_all_rho(e2, e2_display):
        raise InvariantViolationError("theta2 exponent comparison failed")
    lines.append(
        "q2^(-n/m) < q1^(-n(rho-1)) and half the eps: exponent of q1 is "
        f"{e2[0]} + ({e2[1]})rho <= (n+m+m eps-1) - (m eps/2)rho: "
        "theta2 <= q1^(n+m+m eps-1) q2^(-eps/2) (c5 q1^(-m eps/2))^rho")

    # thresholds neutralize the per-rho factors and the static powers
    if Fraction(2, 1) / (m * eps) * (m * eps / 2) != 1:
        raise InvariantViolationError("threshold exponent identity failed")
    lines.append(
        "q1 >= max(c4, c5)^(2/(m eps)) gives c4 q1^(-m eps/2) <= 1 and "
        "c5 q1^(-m eps/2) <= 1")
    for name, e in (("m-1", Fraction(m - 1)),
                    ("n+m+m eps-1", n + m + m * eps - 1)):
        if Fraction(2, 1) / eps * e * (eps / 2) != e:
            raise InvariantViolationError("q2 threshold exponent identity failed")
    lines.append(
        "q2 >= q1^((2/eps)(m-1)) gives q1^(m-1) q2^(-eps/2) <= 1; "
        "q2 >= q1^((2/eps)(n+m+m eps-1)) gives q1^(n+m+m eps-1) q2^(-eps/2) <= 1")
    lines.append(
        "hence both thresholds met would force theta1 <= 1 and theta2 <= 1, "
        "contradicting theta1 + theta2 > 2")
    return tuple(lines)


@dataclass(frozen=True)
class Certificate:
    target: Target
    constants: BoundConstants
    q1_min: int
    q2_exponents: tuple[Fraction, Fraction]
    mu: Fraction
    statement: str
    derivation: tuple[str, ...]
    version: str = "1"


def gap_certificate(target: Target) -> Certificate:
    """Emit the machine-readable two-solution exclusion for the target."""
    consts = target.constants()
    mexp = Fraction(2, 1) / (target.m * target.eps)
    q1_min = max(_ceil_rational_power(consts.c4.value, mexp),
                 _ceil_rational_power(consts.c5.value, mexp))
    e1 = Fraction(2, 1) / target.eps * (target.m - 1)
    e2 = Fraction(2, 1) / target.eps * (target.n + target.m
                                        + target.m * target.eps - 1)
    derivation = exponent_chain(target.n, target.m, target.eps)
    statement = (
        f"Let xi = ({target.a}/{target.b})^(1/{target.n}) and "
        f"mu = {target.mu}. Any two rationals p1/q1, p2/q2 with positive "
        f"denominators inside the band (2/3)^(1/{target.n}) xi <= p/q <= "
        f"(3/2)^(1/{target.n}) xi, each satisfying |xi - p/q| <= q^(-mu), "
        f"with q1 >= {q1_min}, must satisfy "
        f"q2 < max(q1^({e1}), q1^({e2})) = q1^({max(e1, e2)}). "
        f"In particular the inequality |xi - p/q| <= q^(-mu) has only "
        f"finitely many rational solutions.")
    return Certificate(target, consts, q1_min, (e1, e2), target.mu,
                       statement, derivation)


# ---------------------------------------------------------------------------
# continued fractions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Convergent:
    index: int
    quotient: int
    p: int
    q: int


def convergents(target: Target, depth: int) -> tuple[Convergent, ...]:
    """First ``depth`` continued-fraction convergents of xi, each partial
    quotient certified by refining the root enclosure until its floor is
    unambiguous."""
    if depth < 1 or depth > 200:
        raise BadParamsError("depth must lie in 1..200")
    out = []
    pm1, pm2 = 1, 0
    qm1, qm2 = 0, 1
    for i in range(depth):
        def builder(prec, _pm1=pm1, _pm2=pm2, _qm1=qm1, _qm2=qm2):
            xi = target.xi_interval(prec)
            num = xi * _qm2 - _pm2
            den = -(xi * _qm1) + _pm1
            if den.lo <= 0 <= den.hi:
                return None
            x = num / den
            flo, fhi = floor(x.lo), floor(x.hi)
            return flo if flo == fhi else None

        try:
            a_i = resolve(builder, target.prec, PREC_CAP,
                          what=f"partial quotient {i}")
        except IndeterminateError as exc:
            raise IndeterminatePartialQuotientError(
                f"partial quotient {i} unresolved at precision cap",
                index=i) from exc
        if i > 0 and a_i < 1:
            raise InvariantViolationError(
                f"partial quotient {i} computed as {a_i} < 1")
        p = a_i * pm1 + pm2
        q = a_i * qm1 + qm2
        out.append(Convergent(i, a_i, p, q))
        pm2, pm1 = pm1, p
        qm2, qm1 = qm1, q
    return tuple(out)


@dataclass(frozen=True)
class ConvergentReport:
    index: int
    p: int
    q: int
    in_band: bool
    err_lo: Fraction
    err_hi: Fraction
    mu_emp: float | None
    mu_hit: bool           # |xi - p/q| <= q^(-mu), resolved exactly
    beyond_q1_threshold: bool
    cf_self_check: bool      # |xi - p/q| < 1/q^2, certified


@dataclass(frozen=True)
class HuntReport:
    target: Target
    depth: int
    q1_min: int
    q2_exponents: tuple[Fraction, Fraction]
    rows: tuple[ConvergentReport, ...]
    violations: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _mu_hit(target: Target, p: int, q: int) -> bool:
    """|xi - p/q| <= q^(-mu) via the exact power comparison
    |xi - p/q|^V * q^U <= 1 with mu = U/V."""
    mu = target.mu
    u, v = mu.numerator, mu.denominator

    def builder(prec):
        xi = target.xi_interval(prec)
        err = abs(xi - Fraction(p, q))
        lhs = err.pow(v) * q ** u
        return lhs.compare_le(1)

    return resolve(builder, target.prec, PREC_CAP, what=f"mu test {p}/{q}")


def cf_hunt(target: Target, depth: int) -> HuntReport:
    """Stress-test the certificate against the convergents of xi."""
    cert = gap_certificate(target)
    conv = convergents(target, depth)
    rows = []
    for c in conv:
        in_band = band_check(c.p, c.q, target)

        def err_builder(prec, _c=c):
            xi = target.xi_interval(prec)
            err = abs(xi - Fraction(_c.p, _c.q))
            # refined until the classical convergent bound resolves
            v = (err * (_c.q ** 2)).compare_lt(1)
            return None if v is None else (err, v)

        err, self_check = resolve(err_builder, target.prec, PREC_CAP,
                                  what=f"error enclosure {c.p}/{c.q}")
        mu_emp = None
        if c.q >= 2 and err.lo > 0:
            mid = float(err.midpoint())
            mu_emp = -math.log(mid) / math.log(c.q)
        rows.append(ConvergentReport(
            c.index, c.p, c.q, in_band, err.lo, err.hi, mu_emp,
            _mu_hit(target, c.p, c.q), c.q >= cert.q1_min, self_check))

    def ge_power(q2: int, q1: int, e: Fraction) -> bool:
        # q2 >= q1^e with rational e, compared exactly
        return q2 ** e.denominator >= q1 ** e.numerator

    violations = []
    eligible = [r for r in rows if r.in_band and r.mu_hit]
    for i, r1 in enumerate(eligible):
        if r1.q < cert.q1_min:
            continue
        for r2 in eligible[i + 1:]:
            # The certificate forbids q2 >= max(q1^e1, q1^e2).
            if all(ge_power(r2.q, r1.q, e) for e in cert.q2_exponents):
                violations.append((r1.index, r2.index))
    return HuntReport(target, depth, cert.q1_min, cert.q2_exponents,
                      tuple(rows), tuple(violations))
