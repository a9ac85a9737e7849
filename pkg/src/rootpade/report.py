"""Report rendering: delimited tables plus matplotlib figures.

The library itself never plots; this module takes the plot-ready data the
other modules emit (denominator growth tables, convergent hunts) and writes
CSV files with PNG figures next to them.
"""

from __future__ import annotations

import csv
import os
from fractions import Fraction


def _figure_backend():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def write_maier_report(out_dir: str, n: int, m: int, max_rho: int) -> list[str]:
    from .bounds import maier_growth_table

    table = maier_growth_table(n, m, max_rho)
    csv_path = os.path.join(out_dir, f"maier_growth_n{n}_m{m}.csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["rho", "lcm", "lcm_root", "rigorous_base", "within"])
        for rho, value, root in table.rows:
            writer.writerow([rho, value, f"{root:.6f}",
                             str(table.rigorous_base), table.all_within])

    plt = _figure_backend()
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot([r[0] for r in table.rows], [r[2] for r in table.rows],
            marker="o", label="lcm(rho)^(1/rho)")
    ax.axhline(table.empirical_base, linestyle="--", color="gray",
               label=f"empirical sup = {table.empirical_base:.3f}")
    ax.set_xlabel("rho")
    ax.set_ylabel("denominator growth base")
    ax.set_title(f"coefficient denominator growth, n={n}, m={m}")
    ax.legend()
    fig.tight_layout()
    png_path = os.path.join(out_dir, f"maier_growth_n{n}_m{m}.png")
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    return [csv_path, png_path]


def write_hunt_report(out_dir: str, a: int, b: int, n: int, m: int,
                      eps: Fraction, depth: int, prec: int) -> list[str]:
    from .certify import Target, cf_hunt

    target = Target(a, b, n, m, eps, prec=prec)
    report = cf_hunt(target, depth)
    csv_path = os.path.join(out_dir, f"hunt_{a}_{b}_{n}.csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "p", "q", "in_band", "mu_emp", "mu_hit",
                         "beyond_q1_threshold", "cf_self_check"])
        for r in report.rows:
            writer.writerow([r.index, r.p, r.q, int(r.in_band),
                             "" if r.mu_emp is None else f"{r.mu_emp:.6f}",
                             int(r.mu_hit), int(r.beyond_q1_threshold),
                             int(r.cf_self_check)])

    plt = _figure_backend()
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = [r.index for r in report.rows if r.mu_emp is not None]
    ys = [r.mu_emp for r in report.rows if r.mu_emp is not None]
    ax.plot(xs, ys, marker="o", label="empirical exponent")
    ax.axhline(float(target.mu), linestyle="--", color="red",
               label=f"mu = {target.mu}")
    ax.axhline(2.0, linestyle=":", color="gray", label="exponent 2")
    ax.set_xlabel("convergent index")
    ax.set_ylabel("-log|xi - p/q| / log q")
    ax.set_title(f"convergents of ({a}/{b})^(1/{n}), violations: "
                 f"{len(report.violations)}")
    ax.legend()
    fig.tight_layout()
    png_path = os.path.join(out_dir, f"hunt_{a}_{b}_{n}.png")
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    return [csv_path, png_path]


def write_reports(out_dir: str, a: int, b: int, n: int, m: int, eps: Fraction,
                  depth: int, max_rho: int, prec: int) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    written = write_maier_report(out_dir, n, m, max_rho)
    written += write_hunt_report(out_dir, a, b, n, m, eps, depth, prec)
    return written
