from __future__ import annotations

import argparse
import sys

from ..errors import UsageError
from ..schemas import FAMILY_PARAMETERS, SweepAxis, SweepSpec
from ..services.sweeps import run_sweep
from ..sweep_io import read_sweep_config, write_csv


def parse_axis(text: str) -> SweepAxis:
    """name:min:max:steps"""
    parts = text.split(":")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"axis must be name:min:max:steps, got {text!r}")
    name, lo, hi, steps = parts
    try:
        return SweepAxis(name=name.replace("-", "_"), min=float(lo), max=float(hi), steps=int(steps))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad axis {text!r}: {exc}") from None


def parse_fixed(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"fixed parameter must be name=value, got {text!r}")
    try:
        return name.strip().replace("-", "_"), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number in {text!r}") from None


def build_spec(args: argparse.Namespace) -> SweepSpec:
    if args.config:
        spec = read_sweep_config(args.config)
        if args.tol is not None:
            spec = spec.model_copy(update={"tolerance_sigfigs": args.tol})
        return spec
    if not args.family or not args.axis1:
        raise UsageError("give --config or both --family and --axis1")
    fields = {
        "family": args.family,
        "axis1": args.axis1,
        "axis2": args.axis2,
        "fixed": dict(args.fixed or []),
    }
    if args.tol is not None:
        fields["tolerance_sigfigs"] = args.tol
    return SweepSpec(**fields)


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = build_spec(args)
    rows = run_sweep(spec, jobs=args.jobs)
    if args.out == "-":
        write_csv(rows, sys.stdout)
    else:
        write_csv(rows, args.out)
    return 0 if all(r.converged for r in rows) else 2


def register(subparsers) -> None:
    p = subparsers.add_parser("sweep", help="entropy over a one- or two-parameter grid, as CSV")
    p.add_argument("--config", help="key=value sweep file")
    p.add_argument("--family", choices=list(FAMILY_PARAMETERS))
    p.add_argument("--axis1", type=parse_axis, help="name:min:max:steps")
    p.add_argument("--axis2", type=parse_axis, help="name:min:max:steps")
    p.add_argument("--fixed", type=parse_fixed, action="append", help="name=value (repeatable)")
    p.add_argument("--tol", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out", default="-", help="CSV path, - for stdout")
    p.set_defaults(func=cmd_sweep)
