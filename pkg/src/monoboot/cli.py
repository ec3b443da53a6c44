"""Command-line front end: ``monoboot {fit,band,bandwidth,simulate}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bandwidth import select_c
from .bootstrap import BootstrapConfig, confidence_band
from .estimators import SlseFit, nw_at, slse_curve
from .io import load_csv, write_table
from .isotonic import RegressionSample, fit_lse
from .kernel import BandwidthPlan
from .rng import substream
from .simulation import ScenarioSpec, coverage_experiment, gen_sample


def step_grid(step: float, include_one: bool = False) -> np.ndarray:
    if not 0.0 < step < 1.0:
        raise ValueError("grid step must lie in (0, 1)")
    m = int(round(1.0 / step))
    pts = np.round(np.arange(1, m + 1) * step, 12)
    pts = pts[pts <= 1.0]
    return pts if include_one else pts[pts < 1.0]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", type=Path, help="CSV with header x,y")
    common.add_argument("--output", type=Path, required=True)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--mendota", action="store_true", help="input x is year; apply the Mendota transform")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--c", type=float, default=0.5)
    common.add_argument("--c0", type=float, default=0.7)
    common.add_argument("--B", type=int, default=1000)
    common.add_argument("--alpha", type=float, default=0.05)
    common.add_argument("--grid-step", type=float, default=0.01)
    common.add_argument("--estimator", choices=["slse", "nw"], default="slse")
    common.add_argument("--studentized", action="store_true")
    common.add_argument("--sigma", choices=["hall-kay", "residual"], default="hall-kay", help="NW only")
    common.add_argument("--scenario", choices=["quadratic", "logistic"], default="quadratic")
    common.add_argument("--n", type=int, default=100)
    common.add_argument("--sigma0", type=float, default=0.1)
    common.add_argument("--workers", type=int, default=1)

    p = argparse.ArgumentParser(prog="monoboot", description="Smoothed-bootstrap intervals for monotone regression.")
    sub = p.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("fit", parents=[common], help="isotonic fit and smoothed curve")
    sub.add_parser("band", parents=[common], help="pointwise bootstrap confidence band")
    bw = sub.add_parser("bandwidth", parents=[common], help="bootstrap MISE bandwidth selection")
    bw.add_argument("--c-min", type=float, default=0.01)
    bw.add_argument("--c-max", type=float, default=1.0)
    bw.add_argument("--c-step", type=float, default=0.01)
    sim = sub.add_parser("simulate", parents=[common], help="Monte Carlo coverage study")
    sim.add_argument("--M", type=int, default=200)
    return p


def _sample(args) -> tuple[RegressionSample, dict]:
    if args.input is not None:
        return load_csv(args.input, mendota=args.mendota), {"input": str(args.input), "mendota": args.mendota}
    spec = ScenarioSpec(args.scenario, args.sigma0, args.n)
    # Substream key 2**32 keeps generated data apart from bootstrap streams.
    sample = gen_sample(spec, substream(args.seed, 1 << 32))
    return sample, {"scenario": args.scenario, "sigma0": args.sigma0}


def _config(args) -> BootstrapConfig:
    return BootstrapConfig(
        B=args.B,
        seed=args.seed,
        estimator=args.estimator,
        studentized=args.studentized,
        alpha=args.alpha,
        c=args.c,
        c0=args.c0,
        sigma=args.sigma,
        workers=args.workers,
    )


def _sibling(path: Path, tag: str) -> Path:
    return path.with_name(f"{path.stem}.{tag}{path.suffix}")


def run(args: argparse.Namespace) -> int:
    if args.subcommand == "simulate":
        spec = ScenarioSpec(args.scenario, args.sigma0, args.n)
        ts = step_grid(args.grid_step)
        rep = coverage_experiment(spec, _config(args), ts, args.M, args.seed, workers=args.workers)
        write_table(args.output, {"t": rep.ts, "coverage": rep.coverage}, rep.meta, args.format)
        return 0

    sample, src = _sample(args)
    config = _config(args)

    if args.subcommand == "fit":
        plan = BandwidthPlan(args.c, args.c0, sample.n)
        ts = step_grid(args.grid_step)
        lse = fit_lse(sample)
        if args.estimator == "slse":
            curve = slse_curve(SlseFit(lse, plan.h, plan.h0), ts)
        else:
            curve = nw_at(sample, plan.h, ts)
        meta = {**config.meta(sample.n), **src}
        write_table(args.output, {"t": ts, "estimate": curve}, meta, args.format)
        write_table(_sibling(args.output, "lse"), {"x": lse.knots, "fitted": lse.values}, meta, args.format)
    elif args.subcommand == "band":
        band = confidence_band(sample, config, step_grid(args.grid_step))
        cols = {"t": band.ts, "estimate": band.estimate, "lower": band.lower, "upper": band.upper}
        write_table(args.output, cols, {**band.meta, **src}, args.format)
    elif args.subcommand == "bandwidth":
        c_grid = np.round(np.arange(args.c_min, args.c_max + args.c_step / 2, args.c_step), 12)
        sel = select_c(
            sample, c_grid, args.c0, args.B, step_grid(args.grid_step, include_one=True), args.seed,
            workers=args.workers,
        )
        meta = {**config.meta(sample.n), **src, "chosen_c": sel.chosen_c, "chosen_h": sel.h}
        meta.pop("c"), meta.pop("h")
        write_table(args.output, {"c": sel.c_grid, "score": sel.scores}, meta, args.format)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except (ValueError, FileNotFoundError, OSError) as exc:
        record = {"error": type(exc).__name__, "message": str(exc), "subcommand": args.subcommand}
        print(json.dumps(record), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
