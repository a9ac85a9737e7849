from fractions import Fraction as F

import pytest

from rootpade.bounds import (
    band_radius_upper,
    bound_constants,
    check_exact_degree,
    coefficient_K_formula,
    derive_c1,
    derive_c2,
    derive_c3,
    derive_c45,
    maier_base,
    maier_growth_table,
    maier_lcm,
    reassembly_report,
    round_up_rational,
    uniform_bound_check,
)
from rootpade.errors import BadParamsError, FactorZeroError, NotDegreeNError
from rootpade.pade import ExponentSystem, construct_residue
from rootpade.specialization import build_system


class TestMaierLcm:
    def test_worked_value(self):
        assert maier_lcm(build_system(3, 2, 1)) == 4

    def test_single_block_degenerate(self):
        # one block: the polynomial is a monomial with integer coefficients
        ps = construct_residue(ExponentSystem((F(0),), (5,)))
        assert maier_lcm(ps.polys) == 1

    def test_growth_table_within_rigorous_base(self):
        for n, m in ((3, 2), (4, 2)):
            table = maier_growth_table(n, m, 6)
            assert table.all_within
            assert table.empirical_base <= float(table.rigorous_base)
            assert len(table.rows) == 6

    def test_base_requires_valid_shape(self):
        with pytest.raises(BadParamsError):
            maier_base(3, 5)


class TestKFormula:
    def test_single_factor(self):
        # j = 1 (h != x), l = 0, x - k = 1: K = -2, factor = -3/(3-2) = -3
        assert coefficient_K_formula(3, 2, 1, 1, 1, 0, 2) == -3

    def test_boundary_zero_reported(self):
        # x = k makes a factor vanish; the index is reported
        with pytest.raises(FactorZeroError) as info:
            coefficient_K_formula(3, 2, 1, 2, 2, 0, 2)
        assert info.value.index == 1

    def test_reassembly_exact(self):
        for n, m, rho in ((3, 2, 1), (3, 2, 2), (3, 3, 1), (4, 2, 2), (5, 3, 1)):
            rep = reassembly_report(n, m, rho)
            assert rep.exact_match

    def test_prefactor_ratio_reported(self):
        rep = reassembly_report(3, 2, 1)
        assert rep.corrected_prefactor == 2
        assert rep.displayed_prefactor == 0  # visibly corrupt at rho = 1
        rep3 = reassembly_report(3, 2, 3)
        assert rep3.prefactor_ratio == F(1, 2)


class TestC2:
    def test_value(self):
        assert derive_c2(3, 2).value == 81

    def test_monotone(self):
        assert derive_c2(3, 2).value < derive_c2(4, 2).value
        assert derive_c2(4, 2).value < derive_c2(4, 3).value

    def test_trace_present(self):
        assert len(derive_c2(3, 2).trace) >= 4


class TestC3:
    def test_at_least_one(self):
        for n, m in ((3, 2), (4, 2), (5, 3)):
            assert derive_c3(n, m).value >= 1

    def test_golden_value_range(self):
        # static chain for (3, 2): 1/(2 sin(pi/3)) * 2pi * 9/4 * 1 * 5/2 * 2
        value = derive_c3(3, 2).value
        assert F(40) < value < F(41)

    def test_deterministic(self):
        assert derive_c3(4, 2).value == derive_c3(4, 2).value


class TestC1AndC45:
    def test_c1_is_base_times_b(self):
        base = maier_base(3, 2).value
        assert derive_c1(3, 2, 1).value == base
        assert derive_c1(3, 2, 7).value == base * 7

    def test_degree_check(self):
        check_exact_degree(2, 1, 3)
        with pytest.raises(NotDegreeNError):
            check_exact_degree(8, 1, 3)
        with pytest.raises(NotDegreeNError):
            check_exact_degree(4, 9, 4)  # (2/3)^2, a square for d = 2 | 4
        with pytest.raises(BadParamsError):
            check_exact_degree(4, 2, 3)  # not lowest terms

    def test_c45_assembly(self):
        c4, c5 = derive_c45(3, 2, 2, 1)
        c1 = derive_c1(3, 2, 1).value
        c2 = derive_c2(3, 2).value
        gamma = band_radius_upper(2, 1, 3)
        assert c4.value >= 2 * c1 * c2 * gamma ** 2 * F(999, 1000)
        assert c5.value > c4.value / 10

    def test_dependency_discipline(self):
        # c2, c3 depend only on (n, m): identical across targets
        assert derive_c2(3, 2).value == derive_c2(3, 2).value
        bc_a = bound_constants(3, 2, 2, 1)
        bc_b = bound_constants(3, 2, 7, 1)
        assert bc_a.c2.value == bc_b.c2.value
        assert bc_a.c3.value == bc_b.c3.value
        # c1 depends only on (n, m, b)
        assert bc_a.c1.value == bc_b.c1.value
        assert bound_constants(3, 2, 3, 2).c1.value == 2 * bc_a.c1.value


class TestRoundUp:
    def test_rounds_up(self):
        assert round_up_rational(F(1, 3), 100) == F(34, 100)
        assert round_up_rational(F(1, 2), 100) == F(50, 100)


class TestUniformBounds:
    def test_sampled_soundness_small(self):
        report = uniform_bound_check(3, 2, 4, 20, prec=128, seed=5)
        assert report.ok, report.failures[:3]
