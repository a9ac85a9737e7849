import random
from fractions import Fraction as F

import gmpy2
import mpmath
import pytest

from rootpade.errors import IndeterminateError
from rootpade.exact import BiPoly, Poly
from rootpade.intervals import (
    Interval,
    eval_bipoly_interval,
    eval_poly_interval,
    integer_nth_root,
    nth_root_interval,
    pi_interval,
    resolve,
    sin_interval,
)


class TestIntegerNthRoot:
    def test_against_gmpy2(self):
        rng = random.Random(1)
        for _ in range(300):
            v = rng.randint(0, 10 ** rng.randint(1, 40))
            n = rng.randint(1, 9)
            assert integer_nth_root(v, n) == int(gmpy2.iroot(v, n)[0])

    def test_exact_powers(self):
        for base in (2, 3, 10, 12345):
            for n in (2, 3, 5):
                v = base ** n
                assert integer_nth_root(v, n) == base
                assert integer_nth_root(v - 1, n) == base - 1
                assert integer_nth_root(v + 1, n) == base


class TestNthRootInterval:
    def test_unit(self):
        iv = nth_root_interval(1, 1, 5, 128)
        assert iv.lo == iv.hi == 1

    def test_cbrt2_enclosure_and_width(self):
        iv = nth_root_interval(2, 1, 3, 64)
        mp = mpmath.mp
        mp.prec = 120
        value = F(str(mpmath.nstr(mpmath.cbrt(2), 40)))
        # enclosure verified by cubing endpoints exactly
        assert iv.lo ** 3 <= 2 <= iv.hi ** 3
        assert iv.lo <= value <= iv.hi
        assert iv.width <= F(1, 2 ** (64 - 4)) * iv.lo

    def test_width_contract_small_value(self):
        iv = nth_root_interval(1, 10 ** 9, 3, 96)
        assert iv.lo ** 3 <= F(1, 10 ** 9) <= iv.hi ** 3
        assert iv.width <= F(1, 2 ** (96 - 4)) * iv.lo

    def test_refinement_never_widens(self):
        for a, b, n in ((2, 1, 3), (7, 5, 4), (1, 7, 3)):
            prev = nth_root_interval(a, b, n, 64)
            for prec in (128, 256, 512):
                cur = nth_root_interval(a, b, n, prec)
                assert prev.encloses(cur)
                prev = cur

    def test_exact_power_radicand(self):
        iv = nth_root_interval(8, 1, 3, 64)
        assert iv.lo == iv.hi == 2
        iv = nth_root_interval(27, 8, 3, 64)
        assert iv.lo == iv.hi == F(3, 2)


def mpf_to_fraction(x) -> F:
    sign, man, exp, _ = x._mpf_
    return F((-1) ** int(sign) * int(man)) * F(2) ** int(exp)


class TestPiAndSin:
    def test_pi_matches_mpmath(self):
        mpmath.mp.prec = 300
        pi_ref = mpf_to_fraction(+mpmath.pi)
        iv = pi_interval(128)
        assert iv.lo <= pi_ref <= iv.hi
        assert iv.width < F(1, 2 ** 120)

    def test_sin_matches_mpmath(self):
        mpmath.mp.prec = 300
        pi = pi_interval(128)
        for j, n in ((1, 3), (1, 4), (2, 5), (3, 7)):
            iv = sin_interval(pi * F(j, n), 128)
            ref = mpf_to_fraction(mpmath.sin(mpmath.pi * j / n))
            assert iv.lo <= ref <= iv.hi
            assert iv.lo > 0

    def test_sin_near_half_pi_capped_at_one(self):
        pi = pi_interval(96)
        iv = sin_interval(pi * F(1, 2), 96)
        assert iv.hi == 1 and iv.lo <= 1


class TestIntervalOps:
    def test_enclosure_soundness_random(self):
        # interval evaluation contains the exact rational value: 1000 samples
        rng = random.Random(7)
        poly = Poly([F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(8)])
        bipoly = BiPoly([[F(rng.randint(-9, 9), rng.randint(1, 9))
                          for _ in range(3)] for _ in range(4)])
        for _ in range(1000):
            v = F(rng.randint(-2000, 2000), rng.randint(1, 1000))
            w = F(rng.randint(-2000, 2000), rng.randint(1, 1000))
            dv = F(rng.randint(0, 100), 10 ** 6)
            dw = F(rng.randint(0, 100), 10 ** 6)
            ivx = Interval(v - dv, v + dv)
            ivy = Interval(w - dw, w + dw)
            assert eval_poly_interval(poly, ivx).contains(poly(v))
            assert eval_bipoly_interval(bipoly, ivx, ivy).contains(bipoly.eval(v, w))

    def test_arith_identities(self):
        a = Interval(F(1, 3), F(1, 2))
        b = Interval(F(-2), F(5))
        assert (a + b).contains(F(1, 3) + F(-2))
        assert (a * b).contains(F(1, 2) * 5)
        assert abs(Interval(F(-3), F(2))).lo == 0
        assert (a.pow(3)).lo == F(1, 27)
        assert Interval(F(-2), F(3)).pow(2).lo == 0

    def test_reciprocal_straddle_rejected(self):
        with pytest.raises(ZeroDivisionError):
            Interval(F(-1), F(1)).reciprocal()

    def test_outward_rounds_outward(self):
        iv = Interval(F(1, 3), F(2, 3))
        rounded = iv.outward(32)
        assert rounded.lo <= iv.lo and rounded.hi >= iv.hi
        assert rounded.lo.denominator & (rounded.lo.denominator - 1) == 0

    def test_compare_tristate(self):
        iv = Interval(F(1), F(3))
        assert iv.compare_gt(0) is True
        assert iv.compare_gt(5) is False
        assert iv.compare_gt(2) is None


class TestResolve:
    def test_refines_until_verdict(self):
        calls = []

        def builder(prec):
            calls.append(prec)
            return True if prec >= 256 else None

        assert resolve(builder, 64, 1024) is True
        assert calls == [64, 128, 256]

    def test_indeterminate_at_cap(self):
        with pytest.raises(IndeterminateError):
            resolve(lambda prec: None, 64, 256)

    def test_false_is_a_verdict(self):
        assert resolve(lambda prec: False, 64, 256) is False
