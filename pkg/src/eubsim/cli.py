"""Command-line front end: sweep, figure presets, selfcheck.

Exit codes: 0 success, 1 selfcheck failure, 2 usage or config error,
3 numerical failure (with a diagnostic naming the failing grid point).
Configuration precedence: built-in defaults < --config JSON file < flags.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace

from .errors import ConfigError, IntegrationError, SweepNumericalError
from .selfcheck import run_selfcheck
from .sweep import ALL_QUANTITIES, FIGURE_NAMES, SweepConfig, format_records, preset_with_overrides, run_sweep

USAGE_ERROR = 2
NUMERICAL_ERROR = 3

_CONFIG_KEYS = {
    "lambda": "lambda_over_gamma",
    "delta": "delta_list",
    "r": "r",
    "theta": "theta",
    "t_max": "t_max",
    "points": "n_points",
    "quantities": "quantities",
    "format": "output_format",
}


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    unknown = set(raw) - set(_CONFIG_KEYS) - {"output"}
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    out = {}
    for key, value in raw.items():
        if key == "output":
            out["output"] = value
        else:
            field = _CONFIG_KEYS[key]
            if field in ("delta_list", "quantities"):
                value = tuple(value)
            out[field] = value
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eubsim",
        description="Entropic uncertainty bound and quantum correlations under detuned dissipation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a (delta, gamma*t) sweep")
    sweep.add_argument("--lambda", dest="lam", type=float, help="spectral width in units of gamma")
    sweep.add_argument("--delta", type=float, action="append", help="detuning in units of gamma (repeatable)")
    sweep.add_argument("--r", type=float, help="initial-state purity weight in [0, 1]")
    sweep.add_argument("--theta", type=float, help="correlation angle in radians (default pi/4)")
    sweep.add_argument("--t-max", type=float, help="end of the gamma*t grid")
    sweep.add_argument("--points", type=int, help="number of grid points (inclusive of 0 and t-max)")
    sweep.add_argument("--quantities", nargs="+", choices=ALL_QUANTITIES, help="quantities this sweep is about")
    sweep.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    sweep.add_argument("--output", help="output path (default stdout)")
    sweep.add_argument("--config", help="JSON config file; flags override it")
    sweep.add_argument(
        "--no-lamb-shift",
        action="store_true",
        help="drop the Lamb-shift term in oracle integrations (sweeps use the exact map; see selfcheck)",
    )

    figure = sub.add_parser("figure", help="run a figure preset")
    figure.add_argument("name", choices=FIGURE_NAMES)
    figure.add_argument("--delta", type=float, action="append", help="override the preset detunings")
    figure.add_argument("--t-max", type=float, help="override the preset time range")
    figure.add_argument("--points", type=int, help="override the preset grid size")
    figure.add_argument("--format", choices=("csv", "json"))
    figure.add_argument("--output", help="output path (default <name>.csv / <name>.json)")

    selfcheck = sub.add_parser("selfcheck", help="run the invariant suites")
    selfcheck.add_argument(
        "--no-lamb-shift",
        action="store_true",
        help="run the master-equation suite with the paper-literal equation (expected to mismatch at delta != 0)",
    )
    return parser


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_records(cfg: SweepConfig, output: str | None) -> int:
    records = run_sweep(cfg)
    _emit(format_records(records, cfg.output_format), output)
    return 0


def _cmd_sweep(args) -> int:
    overrides = dict(_load_config_file(args.config)) if args.config else {}
    output = args.output if args.output is not None else overrides.pop("output", None)
    overrides.pop("output", None)
    flag_overrides = {
        "lambda_over_gamma": args.lam,
        "delta_list": tuple(args.delta) if args.delta else None,
        "r": args.r,
        "theta": args.theta,
        "t_max": args.t_max,
        "n_points": args.points,
        "quantities": tuple(args.quantities) if args.quantities else None,
        "output_format": args.format,
    }
    overrides.update({k: v for k, v in flag_overrides.items() if v is not None})
    cfg = replace(SweepConfig(), **overrides).validate()
    return _run_records(cfg, output)


def _cmd_figure(args) -> int:
    cfg = preset_with_overrides(
        args.name,
        delta_list=tuple(args.delta) if args.delta else None,
        t_max=args.t_max,
        n_points=args.points,
        output_format=args.format,
    ).validate()
    output = args.output or f"{args.name}.{cfg.output_format}"
    return _run_records(cfg, output)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "figure":
            return _cmd_figure(args)
        if args.command == "selfcheck":
            return 0 if run_selfcheck(include_lamb_shift=not args.no_lamb_shift) else 1
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (SweepNumericalError, IntegrationError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return NUMERICAL_ERROR


def entry_point() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry_point()
