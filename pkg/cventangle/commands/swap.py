from __future__ import annotations

import argparse
import sys

import numpy as np

from ..analytic import p_parameter
from ..errors import UsageError
from ..services.evaluation import build_state, evaluate_family
from ..services.purification import purification_scan
from ..sweep_io import fmt, write_scan_csv
from .sweep import parse_axis


def _bell_report(args: argparse.Namespace) -> int:
    params = {"alpha": args.alpha, "beta": args.beta, "sigma": args.sigma, "c": args.c, "a": args.a, "b": args.b, "mu": args.mu}
    before = [
        evaluate_family("bell", {"alpha": w, "beta": w, "x2": args.c, "sigma": args.sigma}, tol_sigfigs=args.tol)
        for w in (args.alpha, args.beta)
    ]
    after = evaluate_family("swap-bell", params, tol_sigfigs=args.tol)
    p_swapped = p_parameter(build_state("swap-bell", params)).value
    print(
        f"swap=bell alpha={args.alpha:g} beta={args.beta:g} mu={args.mu:g} a={args.a:g} b={args.b:g} "
        f"P={p_swapped:.10g} E_alpha={before[0].entropy_bits:.10g} E_beta={before[1].entropy_bits:.10g} "
        f"E_swapped={after.entropy_bits:.10g} converged={fmt(after.converged)}"
    )
    return 0 if after.converged and all(r.converged for r in before) else 2


def _cat_report(args: argparse.Namespace) -> int:
    before = evaluate_family("cat", {"a0_sq": args.a0_sq, "d": args.d}, tol_sigfigs=args.tol)
    after = evaluate_family(
        "swap-cat", {"a0_sq": args.a0_sq, "d": args.d, "a": args.a, "b": args.b, "mu": args.mu}, tol_sigfigs=args.tol
    )
    gain = after.entropy_bits - before.entropy_bits
    print(
        f"swap=cat a0_sq={args.a0_sq:g} d={args.d:g} mu={args.mu:g} a={args.a:g} b={args.b:g} "
        f"E_initial={before.entropy_bits:.10g} E_swapped={after.entropy_bits:.10g} gain={gain:.10g} "
        f"purified={fmt(gain > 0)} converged={fmt(after.converged and before.converged)}"
    )
    return 0 if after.converged and before.converged else 2


def _cat_scan(args: argparse.Namespace) -> int:
    reports = purification_scan(
        np.sqrt(args.a0_sq), args.d, args.mu, args.a_range.values(), args.b_range.values(), jobs=args.jobs, tol_sigfigs=args.tol
    )
    write_scan_csv(reports, sys.stdout if args.out == "-" else args.out)
    return 0 if all(r.converged for r in reports) else 2


def cmd_swap(args: argparse.Namespace) -> int:
    if args.family == "bell":
        if args.scan:
            raise UsageError("--scan is only available for the cat protocol")
        return _bell_report(args)
    if not 0.0 <= args.a0_sq <= 1.0:
        raise UsageError(f"--a0-sq must lie in [0, 1], got {args.a0_sq}")
    return _cat_scan(args) if args.scan else _cat_report(args)


def _range(name: str):
    return lambda s: parse_axis(f"{name}:{s}")


def register(subparsers) -> None:
    p = subparsers.add_parser("swap", help="entanglement swapping of two Bell or cat pairs")
    p.add_argument("family", choices=("bell", "cat"))
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--a0-sq", dest="a0_sq", type=float, default=0.3)
    p.add_argument("--d", type=float, default=1.0)
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--scan", action="store_true", help="scan the outcomes (a, b) and write CSV")
    p.add_argument("--a-range", dest="a_range", type=_range("a"), default="-2:2:11", help="min:max:steps")
    p.add_argument("--b-range", dest="b_range", type=_range("b"), default="-2:2:11", help="min:max:steps")
    p.add_argument("--tol", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out", default="-", help="CSV path for --scan, - for stdout")
    p.set_defaults(func=cmd_swap)
