"""Command-line surface.

Subcommands: construct, verify, delta, theta, certify, hunt, report.
Exit codes: 0 success, 1 violated invariant / unresolved certification,
2 usage or input error.  All structured output is canonical JSON (sorted
keys, fixed separators) so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields
from fractions import Fraction

from . import serialize
from .errors import InputError, InvariantError, IndeterminateError, RootPadeError
from .exact import as_fraction
from .intervals import PREC_CAP, PREC_FLOOR

ENV_CONFIG = "ROOTPADE_CONFIG"


@dataclass
class Config:
    precision: int = 256
    format: str = "json"
    out: str | None = None
    max_n: int = 5
    max_m: int = 4
    max_rho: int = 4
    golden_dir: str | None = None

    def validate(self) -> "Config":
        if not PREC_FLOOR <= self.precision <= PREC_CAP:
            raise InputError(
                f"precision must lie in [{PREC_FLOOR}, {PREC_CAP}]")
        if self.format not in ("json", "text"):
            raise InputError("format must be json or text")
        return self


def load_config(path: str | None = None) -> Config:
    """Defaults, overridden by the JSON file at $ROOTPADE_CONFIG (or ``path``).
    Unknown keys are rejected."""
    cfg = Config()
    path = path or os.environ.get(ENV_CONFIG)
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        known = {f.name for f in fields(Config)}
        for key, value in data.items():
            if key not in known:
                raise InputError(f"unknown config key: {key}")
            setattr(cfg, key, value)
    return cfg.validate()


def _parse_fraction_list(text: str) -> tuple[Fraction, ...]:
    return tuple(as_fraction(part.strip()) for part in text.split(","))


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part.strip()) for part in text.split(","))


def _emit(args, payload: dict, text_lines: list[str] | None = None) -> None:
    if args.format == "text" and text_lines is not None:
        output = "\n".join(text_lines) + "\n"
    else:
        output = serialize.dumps_canonical(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)


def _target_from_args(args):
    from .certify import Target
    eps = as_fraction(args.eps) if getattr(args, "eps", None) else Fraction(1, 2)
    return Target(args.a, args.b, args.n, args.m, eps, prec=args.prec)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def cmd_construct(args) -> int:
    from .pade import ExponentSystem, construct_residue, remainder_series
    from .specialization import build_system

    if args.omega is not None:
        if args.rho is None:
            raise InputError("--rho is required with --omega")
        system = ExponentSystem(_parse_fraction_list(args.omega),
                                _parse_int_list(args.rho))
        ps = construct_residue(system)
        length = args.len or system.sigma + 3
        series = remainder_series(ps, max(length, system.sigma))
        payload = {
            "system": serialize.pade_system_json(ps),
            "remainder_prefix": [serialize.frac_json(c) for c in series.coeffs],
        }
        text = [f"A_{k + 1} = {p!r}" for k, p in enumerate(ps.polys)]
        text.append(f"remainder prefix: {list(series.coeffs)}")
        _emit(args, payload, text)
        return 0
    if args.n is None or args.m is None or args.rho is None:
        raise InputError("need either --omega/--rho or --n/--m/--rho")
    rho_values = _parse_int_list(args.rho)
    if len(rho_values) != 1:
        raise InputError("specialized construction takes a single --rho")
    sys_ = build_system(args.n, args.m, rho_values[0])
    payload = serialize.nth_root_system_json(sys_)
    text = [f"entry({h},{k}) = {sys_.entry(h, k)!r}"
            for h in range(1, sys_.m + 1) for k in range(1, sys_.m + 1)]
    _emit(args, payload, text)
    return 0


def cmd_verify(args) -> int:
    report = run_verification_suite(max_n=args.max_n, max_m=args.max_m,
                                    max_rho=args.max_rho,
                                    random_count=args.random, seed=args.seed)
    ok = all(item["pass"] for item in report["checks"])
    text = [("PASS " if item["pass"] else "FAIL ") + item["name"]
            + (f" ({item['detail']})" if item.get("detail") else "")
            for item in report["checks"]]
    _emit(args, report, text)
    return 0 if ok else 1


def cmd_delta(args) -> int:
    from .pade import ExponentSystem, delta_report

    system = ExponentSystem(_parse_fraction_list(args.omega),
                            _parse_int_list(args.rho))
    rep = delta_report(system)
    payload = {
        "determinant": serialize.frac_json(rep.determinant),
        "gamma_product": serialize.frac_json(rep.gamma_product),
        "magnitude_ratio": serialize.frac_json(rep.magnitude_ratio),
        "note": "the closed-form product uses a different normalization; "
                "the ratio is reported, not forced to 1",
    }
    text = [f"determinant delta = {rep.determinant}",
            f"pairwise gamma product = {rep.gamma_product}",
            f"|gamma product| / |determinant| = {rep.magnitude_ratio}"]
    _emit(args, payload, text)
    return 0


def cmd_theta(args) -> int:
    from .certify import theta_pair
    from .specialization import build_system, pair_value, select_row

    target = _target_from_args(args)
    pair = theta_pair(target, args.p1, args.q1, args.p2, args.q2)
    payload = serialize.approx_pair_json(pair)
    # rho = 1 diagnostic: the exact pair value independent of the selection rule
    sys1 = build_system(target.n, target.m, 1)
    w = Fraction(target.a * args.q1 ** target.n,
                 target.b * args.p1 ** target.n)
    y = Fraction(args.q1 * args.p2, args.p1 * args.q2)
    h0 = select_row(sys1, w, y)
    payload["diagnostic_rho1"] = {
        "h0": h0,
        "pair_value": serialize.frac_json(pair_value(sys1, h0, w, y)),
    }
    text = [f"rho = {pair.rho}, h0 = {pair.h0}",
            f"exact pair value = {pair.pair_val}",
            f"theta1 in [{float(pair.theta1.lo):.6g}, {float(pair.theta1.hi):.6g}]",
            f"theta2 in [{float(pair.theta2.lo):.6g}, {float(pair.theta2.hi):.6g}]",
            f"sum > 2: {pair.sum_exceeds_two}, max > 1: {pair.max_exceeds_one}"]
    _emit(args, payload, text)
    return 0


def cmd_certify(args) -> int:
    from .certify import gap_certificate

    cert = gap_certificate(_target_from_args(args))
    payload = serialize.certificate_json(cert)
    text = [cert.statement, "", "derivation:"] + list(cert.derivation)
    _emit(args, payload, text)
    return 0


def cmd_hunt(args) -> int:
    from .certify import cf_hunt

    report = cf_hunt(_target_from_args(args), args.depth)
    payload = serialize.hunt_report_json(report)
    text = []
    for r in report.rows:
        text.append(
            f"[{r.index:3d}] {r.p}/{r.q} band={int(r.in_band)} "
            f"mu_hit={int(r.mu_hit)} mu_emp="
            + (f"{r.mu_emp:.4f}" if r.mu_emp is not None else "n/a"))
    text.append(f"violations: {list(report.violations)}")
    _emit(args, payload, text)
    return 0 if report.ok else 1


def cmd_report(args) -> int:
    from .report import write_reports

    written = write_reports(args.out_dir, a=args.a, b=args.b, n=args.n,
                            m=args.m, eps=as_fraction(args.eps),
                            depth=args.depth, max_rho=args.max_rho,
                            prec=args.prec)
    _emit(args, {"written": written}, ["wrote:"] + written)
    return 0


# ---------------------------------------------------------------------------
# the verification suite (drives the exact identity checks end to end)
# ---------------------------------------------------------------------------

def grid_cells(max_n: int, max_m: int, max_rho: int):
    for n in range(3, max_n + 1):
        for m in range(2, min(n, max_m) + 1):
            for rho in range(1, max_rho + 1):
                yield n, m, rho


def random_exponent_system(rng, max_m: int = 3, max_rho: int = 3):
    from .pade import ExponentSystem
    while True:
        m = rng.randint(1, max_m)
        omega = tuple(Fraction(rng.randint(-12, 12), rng.randint(1, 9))
                      for _ in range(m))
        rho = tuple(rng.randint(1, max_rho) for _ in range(m))
        try:
            return ExponentSystem(omega, rho)
        except InputError:
            continue


def run_verification_suite(max_n: int = 5, max_m: int = 4, max_rho: int = 4,
                           random_count: int = 25, seed: int = 20250808) -> dict:
    import random

    from .pade import (ExponentSystem, construct_linsolve, construct_residue,
                       delta_report, determinant_delta, log_series_form,
                       remainder_series)
    from .specialization import build_system, split_forms

    rng = random.Random(seed)
    checks = []

    def record(name, ok, detail=""):
        checks.append({"name": name, "pass": bool(ok), "detail": detail})

    systems = [ExponentSystem(tuple(Fraction(k, n) for k in range(m)),
                              (rho,) * m)
               for n, m, rho in grid_cells(max_n, max_m, max_rho)]
    systems += [random_exponent_system(rng) for _ in range(random_count)]

    agree = True
    normal = True
    for system in systems:
        ps = construct_residue(system)
        ls = construct_linsolve(system, system.sigma)
        length = system.sigma + 4
        series = remainder_series(ps, length)
        if ps.polys != ls.polys:
            agree = False
        if log_series_form(system, length) != series:
            agree = False
        if any(series[l] != 0 for l in range(system.sigma - 1)):
            normal = False
        if series[system.sigma - 1] != system.normalization():
            normal = False
    record("triple-construction agreement", agree,
           f"{len(systems)} systems")
    record("remainder order and pinned coefficient", normal)

    det_ok = True
    golden = None
    for system in systems:
        try:
            delta, _ = determinant_delta(system)
        except RootPadeError:
            det_ok = False
            break
        if delta == 0:
            det_ok = False
    try:
        rep = delta_report(ExponentSystem((Fraction(0), Fraction(1, 2)), (1, 1)))
        golden = (rep.determinant == Fraction(4, 3))
        detail = (f"golden delta 4/3: {golden}; closed-form ratio "
                  f"{rep.magnitude_ratio} (reported, not forced)")
    except RootPadeError:
        golden = False
        detail = "golden evaluation failed"
    record("determinant identity delta * z^sigma", det_ok and golden, detail)

    split_ok = True
    for n, m, rho in grid_cells(max_n, max_m, max_rho):
        try:
            split_forms(build_system(n, m, rho))
        except RootPadeError:
            split_ok = False
    record("specialization split identity and exact divisibility", split_ok)
    return {"checks": checks, "seed": seed,
            "grid": {"max_n": max_n, "max_m": max_m, "max_rho": max_rho},
            "random_count": random_count}


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser(cfg: Config) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rootpade",
        description="Exact Pade-type approximation systems and finiteness "
                    "certificates for n-th roots")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=cfg.precision,
                        help="working precision in bits (64..4096)")
    common.add_argument("--format", choices=("json", "text"),
                        default=cfg.format)
    common.add_argument("--out", default=cfg.out,
                        help="write output to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common],
                       help="build an approximation system")
    p.add_argument("--omega", help="comma-separated rational exponents")
    p.add_argument("--rho", help="comma-separated multiplicities "
                                 "(single value with --n/--m)")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--len", type=int, help="remainder prefix length")
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="run the exact identity suite over a grid")
    p.add_argument("--max-n", type=int, default=cfg.max_n)
    p.add_argument("--max-m", type=int, default=cfg.max_m)
    p.add_argument("--max-rho", type=int, default=cfg.max_rho)
    p.add_argument("--random", type=int, default=25)
    p.add_argument("--seed", type=int, default=20250808)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("delta", parents=[common], help="determinant constant vs closed form")
    p.add_argument("--omega", required=True)
    p.add_argument("--rho", required=True)
    p.set_defaults(handler=cmd_delta)

    p = sub.add_parser("theta", parents=[common], help="obstruction pair for two fractions")
    for name in ("a", "b", "n", "m", "p1", "q1", "p2", "q2"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--eps", default="1/2")
    p.set_defaults(handler=cmd_theta)

    p = sub.add_parser("certify", parents=[common], help="emit the finiteness certificate")
    for name in ("a", "b", "n", "m"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--eps", default="1/2")
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("hunt", parents=[common], help="stress-test against convergents")
    for name in ("a", "b", "n", "m"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--eps", default="1/2")
    p.add_argument("--depth", type=int, default=30)
    p.set_defaults(handler=cmd_hunt)

    p = sub.add_parser("report", parents=[common], help="write delimited reports plus figures")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--eps", default="1/2")
    p.add_argument("--depth", type=int, default=30)
    p.add_argument("--max-rho", type=int, default=12)
    p.set_defaults(handler=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = load_config()
    except (InputError, OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    parser = build_parser(cfg)
    args = parser.parse_args(argv)
    if not PREC_FLOOR <= args.prec <= PREC_CAP:
        print(f"error: --prec must lie in [{PREC_FLOOR}, {PREC_CAP}]",
              file=sys.stderr)
        return 2
    try:
        return args.handler(args)
    except InputError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except (InvariantError, IndeterminateError) as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
