"""Command-line front end.

Subcommands: verify, sample, spacing, density, jpdf-check, bessel.
Every command is a pure function of its configuration: rerunning with
identical flags produces byte-identical files, independent of the
worker count.  Exit codes: 0 success, 1 check/statistics failure,
2 usage error, 3 I/O error, 4 numerical non-convergence.
"""

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import stats, verify
from .ensemble import GpueParams, sample_batch
from .errors import ConvergenceError, StatisticsError
from .specfun import bessel_k0

SCHEMA = "gpue-1"

SPACING_COLUMNS = (
    "bin_left,bin_right,count,empirical_density,analytic_density,"
    "wigner_goe,wigner_gue"
)
DENSITY_COLUMNS = "e,rho_quadrature,rho_mc,count"
SAMPLE_COLUMNS = "index,a,b,c,real,e_plus,e_minus,re,im"


@dataclass
class RunConfig:
    command: str
    sigma: float = 1.0
    samples: int = 1_000_000
    seed: int = 0
    bins: int = 100
    smax: float = None  # defaults to 5 sigma
    out: str = None  # None writes to stdout
    format: str = "csv"
    per_level: bool = False
    unit_mean: bool = False
    workers: int = None
    x: float = None  # bessel argument

    def __post_init__(self):
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValueError("--sigma must be positive")
        if self.samples < 1:
            raise ValueError("--samples must be at least 1")
        if self.bins < 1:
            raise ValueError("--bins must be at least 1")
        if self.seed < 0 or self.seed >= 2 ** 64:
            raise ValueError("--seed must fit in 64 unsigned bits")
        if self.smax is None:
            self.smax = 5.0 * self.sigma
        if not self.smax > 0:
            raise ValueError("--smax must be positive")
        if self.format not in ("csv", "json"):
            raise ValueError("--format must be csv or json")
        if self.workers is None:
            env = os.environ.get("GPUE_WORKERS")
            self.workers = int(env) if env else (os.cpu_count() or 1)
        if self.workers < 1:
            raise ValueError("--workers must be at least 1")


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _emit(cfg, text):
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", encoding="ascii", newline="") as fh:
            fh.write(text)


def _emit_lines(cfg, lines):
    if cfg.out is None:
        for line in lines:
            sys.stdout.write(line + "\n")
    else:
        with open(cfg.out, "w", encoding="ascii", newline="") as fh:
            for line in lines:
                fh.write(line + "\n")


def _config_dict(cfg):
    return {
        "command": cfg.command,
        "sigma": cfg.sigma,
        "samples": cfg.samples,
        "seed": cfg.seed,
        "bins": cfg.bins,
        "smax": cfg.smax,
        "per_level": cfg.per_level,
        "unit_mean": cfg.unit_mean,
    }


def run_spacing(cfg: RunConfig) -> int:
    """Spacing histogram, analytic curve, and optional Wigner overlays."""
    params = GpueParams(cfg.sigma)
    result = stats.mc_spacing(
        params,
        cfg.samples,
        bins=cfg.bins,
        smax=cfg.smax,
        seed=cfg.seed,
        workers=cfg.workers,
    )
    hist, report = result.histogram, result.report
    scale = stats.mean_spacing(cfg.sigma) if cfg.unit_mean else 1.0
    left = hist.edges[:-1] / scale
    right = hist.edges[1:] / scale
    centers = hist.centers / scale
    empirical = hist.density * scale
    analytic = stats.spacing_pdf(hist.centers, cfg.sigma) * scale
    if cfg.unit_mean:
        goe = stats.wigner_reference(1, centers)
        gue = stats.wigner_reference(2, centers)
    else:
        goe = gue = None

    if cfg.format == "csv":
        lines = [SPACING_COLUMNS]
        for i in range(cfg.bins):
            row = [
                _fmt(left[i]),
                _fmt(right[i]),
                str(int(hist.counts[i])),
                _fmt(empirical[i]),
                _fmt(analytic[i]),
                _fmt(goe[i]) if goe is not None else "",
                _fmt(gue[i]) if gue is not None else "",
            ]
            lines.append(",".join(row))
        _emit(cfg, "\n".join(lines) + "\n")
    else:
        payload = {
            "schema": SCHEMA,
            "config": _config_dict(cfg),
            "bin_left": [float(v) for v in left],
            "bin_right": [float(v) for v in right],
            "count": [int(v) for v in hist.counts],
            "empirical_density": [float(v) for v in empirical],
            "analytic_density": [float(v) for v in analytic],
            "wigner_goe": [float(v) for v in goe] if goe is not None else None,
            "wigner_gue": [float(v) for v in gue] if gue is not None else None,
            "comparison": report.to_dict(),
        }
        _emit(cfg, json.dumps(payload, indent=2) + "\n")

    print(
        f"spacing: n={cfg.samples} accepted={report.n_accepted} "
        f"rejected_fraction={report.rejected_fraction:.6f} "
        f"bins_within_3sigma={report.fraction_within_3sigma:.4f} "
        f"sup_deviation={report.sup_deviation:.6g}",
        file=sys.stderr,
    )
    return 0


def run_density(cfg: RunConfig) -> int:
    """Level-density curve by quadrature next to its Monte Carlo histogram."""
    params = GpueParams(cfg.sigma)
    emax = 4.0 * cfg.sigma
    result = stats.mc_level_density(
        params,
        cfg.samples,
        bins=cfg.bins,
        emax=emax,
        seed=cfg.seed,
        workers=cfg.workers,
    )
    hist, report = result.histogram, result.report
    level_scale = 1.0 if cfg.per_level else 2.0
    centers = hist.centers
    rho_quad = np.array(
        [level_scale * 0.5 * stats.level_density(float(e), cfg.sigma) for e in centers]
    )
    rho_mc = hist.density * level_scale

    if cfg.format == "csv":
        lines = [DENSITY_COLUMNS]
        for i in range(cfg.bins):
            lines.append(
                ",".join(
                    [
                        _fmt(centers[i]),
                        _fmt(rho_quad[i]),
                        _fmt(rho_mc[i]),
                        str(int(hist.counts[i])),
                    ]
                )
            )
        _emit(cfg, "\n".join(lines) + "\n")
    else:
        payload = {
            "schema": SCHEMA,
            "config": _config_dict(cfg),
            "e": [float(v) for v in centers],
            "rho_quadrature": [float(v) for v in rho_quad],
            "rho_mc": [float(v) for v in rho_mc],
            "count": [int(v) for v in hist.counts],
            "comparison": report.to_dict(),
        }
        _emit(cfg, json.dumps(payload, indent=2) + "\n")

    print(
        f"density: n={cfg.samples} accepted={report.n_accepted} "
        f"bins_within_3sigma={report.fraction_within_3sigma:.4f}",
        file=sys.stderr,
    )
    return 0


def run_sample(cfg: RunConfig) -> int:
    """Per-sample dump: parameters and spectral classification."""
    params = GpueParams(cfg.sigma)
    a, b, c = sample_batch(params, cfg.samples, cfg.seed)
    bc = b * c
    real = bc >= 0.0
    root = np.sqrt(np.abs(bc))

    if cfg.format == "csv":

        def rows():
            yield SAMPLE_COLUMNS
            for i in range(cfg.samples):
                if real[i]:
                    spec = [_fmt(a[i] + root[i]), _fmt(a[i] - root[i]), "", ""]
                else:
                    spec = ["", "", _fmt(a[i]), _fmt(root[i])]
                yield ",".join(
                    [str(i), _fmt(a[i]), _fmt(b[i]), _fmt(c[i]), str(int(real[i]))]
                    + spec
                )

        _emit_lines(cfg, rows())
    else:
        payload = {
            "schema": SCHEMA,
            "config": _config_dict(cfg),
            "index": list(range(cfg.samples)),
            "a": [float(v) for v in a],
            "b": [float(v) for v in b],
            "c": [float(v) for v in c],
            "real": [int(v) for v in real],
            "e_plus": [float(a[i] + root[i]) if real[i] else None for i in range(cfg.samples)],
            "e_minus": [float(a[i] - root[i]) if real[i] else None for i in range(cfg.samples)],
            "re": [None if real[i] else float(a[i]) for i in range(cfg.samples)],
            "im": [None if real[i] else float(root[i]) for i in range(cfg.samples)],
        }
        _emit(cfg, json.dumps(payload, indent=2) + "\n")
    return 0


def run_verify(cfg: RunConfig, overrides=None) -> int:
    """Full invariant battery; nonzero exit when any check fails."""
    report = verify.run_checks(seed=cfg.seed, overrides=overrides)
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        print(
            f"{status} {check.name}: residual={check.residual:.3e} "
            f"tolerance={check.tolerance:.3e}"
        )
    if cfg.out is not None or cfg.format == "json":
        text = report.to_json() + "\n"
        if cfg.out is None:
            sys.stdout.write(text)
        else:
            with open(cfg.out, "w", encoding="ascii", newline="") as fh:
                fh.write(text)
    if report.passed:
        print("verify: all checks passed")
        return 0
    names = ", ".join(c.name for c in report.failing())
    print(f"verify: FAILED checks: {names}")
    return 1


def run_jpdf_check(cfg: RunConfig) -> int:
    """Closed-form eigenvalue density against the brute-force marginal."""
    worst = 0.0
    sigma = cfg.sigma
    for s in (0.1, 0.5, 1.0, 2.0, 4.0):
        for tot in (0.0, 1.0, 2.0, 4.0):
            ep = 0.5 * (tot + s) * sigma
            em = 0.5 * (tot - s) * sigma
            ref = stats.jpdf(ep, em, sigma)
            rel = abs(stats.jpdf_oracle(ep, em, sigma) - ref) / ref
            worst = max(worst, rel)
    print(f"jpdf-check: worst relative deviation {worst:.3e} on the 20-point grid")
    return 0 if worst <= 1e-6 else 1


def run_bessel(cfg: RunConfig) -> int:
    if cfg.x is None or not cfg.x > 0:
        raise ValueError("bessel requires a positive argument")
    print(_fmt(bessel_k0(cfg.x)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gpue",
        description=(
            "Pseudo-unitary random-matrix toolkit: verification suites, "
            "ensemble sampling, and spacing/density statistics."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, mc=True):
        p.add_argument("--sigma", type=float, default=1.0, help="ensemble scale")
        p.add_argument("--seed", type=int, default=0, help="64-bit stream seed")
        p.add_argument("--out", type=str, default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        if mc:
            p.add_argument("--samples", type=int, default=1_000_000)
            p.add_argument("--bins", type=int, default=100)
            p.add_argument("--workers", type=int, default=None,
                           help="worker threads (default: GPUE_WORKERS or all cores)")

    p = sub.add_parser("verify", help="run the cross-module invariant battery")
    add_common(p, mc=False)

    p = sub.add_parser("sample", help="dump raw ensemble draws")
    add_common(p)

    p = sub.add_parser("spacing", help="spacing histogram vs the analytic law")
    add_common(p)
    p.add_argument("--smax", type=float, default=None, help="histogram range (default 5 sigma)")
    p.add_argument("--unit-mean", action="store_true",
                   help="rescale spacings to unit mean and add Wigner overlays")

    p = sub.add_parser("density", help="level density: quadrature curve vs MC")
    add_common(p)
    p.add_argument("--per-level", action="store_true",
                   help="normalize to one level (integral 1 instead of 2)")

    p = sub.add_parser("jpdf-check", help="eigenvalue density vs brute-force oracle")
    add_common(p, mc=False)

    p = sub.add_parser("bessel", help="evaluate K0 at a point")
    p.add_argument("x", type=float)

    return parser


_RUNNERS = {
    "verify": run_verify,
    "sample": run_sample,
    "spacing": run_spacing,
    "density": run_density,
    "jpdf-check": run_jpdf_check,
    "bessel": run_bessel,
}


def config_from_args(args) -> RunConfig:
    fields = {"command": args.command}
    for name in ("sigma", "samples", "seed", "bins", "smax", "out", "format",
                 "workers", "x"):
        if hasattr(args, name):
            value = getattr(args, name)
            if value is not None or name in ("out", "smax", "workers", "x"):
                fields[name] = value
    if getattr(args, "per_level", False):
        fields["per_level"] = True
    if getattr(args, "unit_mean", False):
        fields["unit_mean"] = True
    return RunConfig(**fields)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return _RUNNERS[args.command](cfg)
    except ValueError as exc:
        print(f"gpue: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"gpue: numerical non-convergence: {exc}", file=sys.stderr)
        return 4
    except StatisticsError as exc:
        print(f"gpue: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"gpue: I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
