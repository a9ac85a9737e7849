"""Wire formats: every rational travels as a [numerator, denominator] pair of
decimal strings, never as a float; interval endpoints travel as hex-float
strings (rounded outward, so the printed interval still encloses the real
one) plus their precision in bits.  ``dumps_canonical`` pins key order and
separators so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .bounds import BoundConstants, DerivedConstant
from .certify import ApproxPair, Certificate, HuntReport
from .exact import BiPoly, Poly
from .intervals import Interval
from .pade import ExponentSystem, PadeSystem
from .specialization import NthRootSystem


def frac_json(fr: Fraction) -> list[str]:
    return [str(fr.numerator), str(fr.denominator)]


def parse_frac(pair) -> Fraction:
    return Fraction(int(pair[0]), int(pair[1]))


def poly_json(p: Poly) -> list[list[str]]:
    return [frac_json(c) for c in p.coeffs]


def parse_poly(data) -> Poly:
    return Poly([parse_frac(c) for c in data])


def bipoly_json(p: BiPoly) -> list[list[list[str]]]:
    return [[frac_json(c) for c in row] for row in p.rows]


def parse_bipoly(data) -> BiPoly:
    return BiPoly([[parse_frac(c) for c in row] for row in data])


def float_down(fr: Fraction) -> float:
    f = float(fr)
    if math.isinf(f):
        return f if f < 0 else math.nextafter(math.inf, 0.0)
    if Fraction(f) > fr:
        f = math.nextafter(f, -math.inf)
    return f


def float_up(fr: Fraction) -> float:
    f = float(fr)
    if math.isinf(f):
        return f if f > 0 else math.nextafter(-math.inf, 0.0)
    if Fraction(f) < fr:
        f = math.nextafter(f, math.inf)
    return f


def interval_json(iv: Interval) -> dict:
    return {
        "lo_hex": float_down(iv.lo).hex(),
        "hi_hex": float_up(iv.hi).hex(),
        "prec": iv.prec,
    }


def parse_interval(data) -> Interval:
    return Interval(Fraction(float.fromhex(data["lo_hex"])),
                    Fraction(float.fromhex(data["hi_hex"])),
                    data["prec"])


def pade_system_json(ps: PadeSystem) -> dict:
    return {
        "omega": [frac_json(w) for w in ps.system.omega],
        "rho": list(ps.system.rho),
        "A": [poly_json(p) for p in ps.polys],
        "normalization": frac_json(ps.normalization),
        "sigma": ps.system.sigma,
    }


def parse_pade_system(data) -> PadeSystem:
    system = ExponentSystem(tuple(parse_frac(w) for w in data["omega"]),
                            tuple(int(r) for r in data["rho"]))
    return PadeSystem(system, tuple(parse_poly(p) for p in data["A"]),
                      parse_frac(data["normalization"]))


def nth_root_system_json(sys_) -> dict:
    return {
        "n": sys_.n,
        "m": sys_.m,
        "rho": sys_.rho,
        "matrix_w": [[poly_json(p) for p in row] for row in sys_.entries],
    }


def parse_nth_root_system(data) -> NthRootSystem:
    entries = tuple(tuple(parse_poly(p) for p in row)
                    for row in data["matrix_w"])
    return NthRootSystem(data["n"], data["m"], data["rho"], entries)


def split_forms_json(forms) -> dict:
    return {
        "system": nth_root_system_json(forms.system),
        "deflated": [poly_json(p) for p in forms.deflated],
        "slope": [bipoly_json(p) for p in forms.slope],
        "pair": [bipoly_json(p) for p in forms.pair],
    }


def parse_split_forms(data):
    from .specialization import SplitForms
    return SplitForms(
        parse_nth_root_system(data["system"]),
        tuple(parse_poly(p) for p in data["deflated"]),
        tuple(parse_bipoly(p) for p in data["slope"]),
        tuple(parse_bipoly(p) for p in data["pair"]),
    )


def derived_constant_json(dc: DerivedConstant) -> dict:
    return {"value": frac_json(dc.value), "trace": list(dc.trace)}


def constants_json(bc: BoundConstants) -> dict:
    return {name: derived_constant_json(getattr(bc, name))
            for name in ("c1", "c2", "c3", "c4", "c5")}


def certificate_json(cert: Certificate) -> dict:
    t = cert.target
    return {
        "target": {"a": t.a, "b": t.b, "n": t.n, "m": t.m,
                   "eps": frac_json(t.eps)},
        "constants": constants_json(cert.constants),
        "thresholds": {
            "Q1min": str(cert.q1_min),
            "Q2min_exponents": [frac_json(e) for e in cert.q2_exponents],
        },
        "mu": frac_json(cert.mu),
        "derivation": list(cert.derivation),
        "statement": cert.statement,
        "version": cert.version,
    }


def approx_pair_json(pair: ApproxPair) -> dict:
    return {
        "p1": str(pair.p1), "q1": str(pair.q1),
        "p2": str(pair.p2), "q2": str(pair.q2),
        "rho": pair.rho,
        "h0": pair.h0,
        "pair_value": frac_json(pair.pair_val),
        "theta1": interval_json(pair.theta1),
        "theta2": interval_json(pair.theta2),
        "sum_exceeds_two": pair.sum_exceeds_two,
        "max_exceeds_one": pair.max_exceeds_one,
    }


def hunt_report_json(report: HuntReport) -> dict:
    t = report.target
    return {
        "target": {"a": t.a, "b": t.b, "n": t.n, "m": t.m,
                   "eps": frac_json(t.eps)},
        "depth": report.depth,
        "Q1min": str(report.q1_min),
        "Q2min_exponents": [frac_json(e) for e in report.q2_exponents],
        "convergents": [
            {
                "index": r.index,
                "p": str(r.p), "q": str(r.q),
                "in_band": r.in_band,
                "err_lo_hex": float_down(r.err_lo).hex(),
                "err_hi_hex": float_up(r.err_hi).hex(),
                "mu_emp": None if r.mu_emp is None else round(r.mu_emp, 6),
                "mu_hit": r.mu_hit,
                "beyond_q1_threshold": r.beyond_q1_threshold,
                "cf_self_check": r.cf_self_check,
            }
            for r in report.rows
        ],
        "violations": [list(v) for v in report.violations],
    }


def dumps_canonical(obj) -> str:
    """Byte-deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True) + "\n"
