import json
import os
from fractions import Fraction as F

from rootpade import serialize
from rootpade.exact import BiPoly, Poly
from rootpade.intervals import Interval
from rootpade.pade import ExponentSystem, construct_residue, delta_report
from rootpade.specialization import build_system, split_forms

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def load_golden(name):
    with open(os.path.join(GOLDEN, name), "r", encoding="utf-8") as fh:
        return json.load(fh)


class TestRoundTrips:
    def test_fraction(self):
        for fr in (F(0), F(-9, 2875), F(10 ** 40, 3)):
            assert serialize.parse_frac(serialize.frac_json(fr)) == fr

    def test_poly(self):
        p = Poly([F(1, 3), 0, F(-7, 2)])
        assert serialize.parse_poly(serialize.poly_json(p)) == p

    def test_bipoly(self):
        p = BiPoly([[1, 0], [F(2, 5), F(-3)]])
        assert serialize.parse_bipoly(serialize.bipoly_json(p)) == p

    def test_pade_system(self):
        ps = construct_residue(ExponentSystem((F(0), F(1, 5)), (2, 1)))
        data = serialize.pade_system_json(ps)
        again = serialize.pade_system_json(serialize.parse_pade_system(data))
        assert data == again

    def test_nth_root_system(self):
        sys_ = build_system(4, 3, 2)
        data = serialize.nth_root_system_json(sys_)
        parsed = serialize.parse_nth_root_system(data)
        assert serialize.nth_root_system_json(parsed) == data

    def test_split_forms(self):
        forms = split_forms(build_system(3, 2, 2))
        data = serialize.split_forms_json(forms)
        parsed = serialize.parse_split_forms(data)
        assert serialize.split_forms_json(parsed) == data

    def test_interval_outward_floats(self):
        iv = Interval(F(1, 3), F(2, 3), prec=128)
        data = serialize.interval_json(iv)
        parsed = serialize.parse_interval(data)
        # the printed enclosure is outward: it contains the original
        assert parsed.lo <= iv.lo and parsed.hi >= iv.hi
        assert serialize.interval_json(parsed) == data

    def test_directed_float_conversion(self):
        third = F(1, 3)
        assert F(serialize.float_down(third)) <= third
        assert F(serialize.float_up(third)) >= third
        assert serialize.float_down(F(1, 2)) == 0.5 == serialize.float_up(F(1, 2))

    def test_canonical_dump_is_stable(self):
        obj = {"b": [1, 2], "a": {"y": "2", "x": "1"}}
        assert serialize.dumps_canonical(obj) == serialize.dumps_canonical(obj)
        assert serialize.dumps_canonical(obj).endswith("\n")


class TestGoldenFiles:
    def test_pade_half(self):
        ps = construct_residue(ExponentSystem((F(0), F(1, 2)), (1, 1)))
        assert serialize.pade_system_json(ps) == load_golden("pade_half.json")

    def test_specialized_matrix(self):
        sys_ = build_system(3, 2, 1)
        assert serialize.nth_root_system_json(sys_) == \
            load_golden("specialized_3_2_1.json")

    def test_delta_values(self):
        golden = load_golden("delta_values.json")
        rep = delta_report(ExponentSystem((F(0), F(1, 2)), (1, 1)))
        entry = golden["omega=(0,1/2),rho=(1,1)"]
        assert serialize.frac_json(rep.determinant) == entry["determinant"]
        assert serialize.frac_json(abs(rep.gamma_product)) == \
            entry["gamma_product_abs"]
        rep = delta_report(ExponentSystem((F(0), F(1, 3)), (1, 1)))
        entry = golden["omega=(0,1/3),rho=(1,1)"]
        assert serialize.frac_json(rep.determinant) == entry["determinant"]
        assert serialize.frac_json(abs(rep.gamma_product)) == \
            entry["gamma_product_abs"]
