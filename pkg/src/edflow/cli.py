"""Command-line front end: run, sweep, mc, and fit subcommands."""

import argparse
import json
import sys

from . import __version__
from .engine import ValidationError, make_time_grid
from .export import export
from .fit import compare_history, read_observed_csv
from .scenario import ScenarioSpec, load_preset, run_scenario
from .sensitivity import (
    MC_DEFAULT_RANGES,
    SWEEPABLE,
    monte_carlo,
    sweep,
)


def _apply_overrides(spec: ScenarioSpec, args) -> ScenarioSpec:
    from dataclasses import replace

    params = spec.params
    if args.param:
        updates = {}
        for item in args.param:
            if "=" not in item:
                raise ValidationError(f"--param expects k=v, got {item!r}")
            key, value = item.split("=", 1)
            updates[key] = json.loads(value)
        params = params.from_dict({**params.to_dict(), **updates})
    grid = spec.grid
    if args.dt is not None or args.horizon is not None:
        grid = make_time_grid(
            grid.start_h,
            grid.start_h + (args.horizon if args.horizon is not None
                            else grid.end_h - grid.start_h),
            args.dt if args.dt is not None else grid.dt_h)
    seed = args.seed if getattr(args, "seed", None) is not None else spec.seed
    return replace(spec, params=params, grid=grid, seed=seed)


def _load_spec(args) -> ScenarioSpec:
    return _apply_overrides(load_preset(args.preset), args)


def _emit(result, out, default_fmt="csv"):
    if out:
        fmt = "json" if str(out).endswith(".json") else default_fmt
        export(result, fmt, out)
        print(f"wrote {out}")


def cmd_run(args) -> int:
    spec = _load_spec(args)
    traj = run_scenario(spec)
    print(f"{spec.label}: {traj.n_steps} steps over "
          f"[{spec.grid.start_h}, {spec.grid.end_h}] h, "
          f"census mean {traj['census'].mean():.2f}, "
          f"boarders peak {traj['boarders'].max():.2f}, "
          f"activations {len(traj.activation_intervals)}")
    _emit(traj, args.out)
    return 0


def cmd_sweep(args) -> int:
    spec = _load_spec(args)
    report = sweep(spec, args.parameter, args.minimum, args.maximum)
    for name, o in report.outputs.items():
        print(f"{name}: base {o.value_base:.4f}  "
              f"min {o.value_min:.4f} ({o.pct_min:+.2f}%)  "
              f"max {o.value_max:.4f} ({o.pct_max:+.2f}%)  "
              f"t_div {o.divergence_time_h:.2f} h")
    _emit(report, args.out)
    return 0


def cmd_mc(args) -> int:
    spec = _load_spec(args)
    if args.ranges:
        with open(args.ranges) as f:
            ranges = {k: tuple(v) for k, v in json.load(f).items()}
    else:
        ranges = dict(MC_DEFAULT_RANGES)
    result = monte_carlo(spec, ranges, args.n, args.seed)
    for name, p in result.percentiles.items():
        print(f"{name}: p5 {p['p5']:.4f}  p50 {p['p50']:.4f}  "
              f"p95 {p['p95']:.4f}  (base {result.base_outputs[name]:.4f})")
    _emit(result, args.out, default_fmt="json")
    return 0


def cmd_fit(args) -> int:
    spec = _load_spec(args)
    times, census = read_observed_csv(args.observed)
    report = compare_history(run_scenario(spec), times, census)
    print(f"rmse {report.rmse:.4f}  mae {report.mae:.4f}  "
          f"n {report.n_samples}  horizon {report.horizon_h:.1f} h")
    _emit(report, args.out, default_fmt="json")
    return 0


def _common(sub):
    sub.add_argument("--preset", default="baseline",
                     help="preset name: baseline or stressed")
    sub.add_argument("--param", action="append", metavar="K=V",
                     help="parameter override, repeatable (JSON values)")
    sub.add_argument("--dt", type=float, help="time step in hours")
    sub.add_argument("--horizon", type=float, help="run length in hours")
    sub.add_argument("--seed", type=int, help="scenario seed override")
    sub.add_argument("--out", help="output file (.csv or .json)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edflow",
        description="ED crowding system-dynamics scenario laboratory")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("run", help="simulate one scenario")
    _common(p)
    p.set_defaults(func=cmd_run)

    p = subs.add_parser("sweep", help="min/base/max sweep of one parameter")
    p.add_argument("--parameter", "--sweep-param", dest="parameter",
                   required=True, choices=SWEEPABLE)
    p.add_argument("--min", dest="minimum", type=float, required=True)
    p.add_argument("--max", dest="maximum", type=float, required=True)
    _common(p)
    p.set_defaults(func=cmd_sweep, preset="stressed")

    p = subs.add_parser("mc", help="Monte Carlo sensitivity batch")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--ranges", help="JSON file of {parameter: [lo, hi]}")
    _common(p)
    p.set_defaults(func=cmd_mc, seed=0)

    p = subs.add_parser("fit", help="score simulated census against a CSV")
    p.add_argument("--observed", required=True,
                   help="CSV with header time_h,census")
    _common(p)
    p.set_defaults(func=cmd_fit)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
