from __future__ import annotations

import argparse

from ..errors import UsageError
from ..schemas import FAMILY_PARAMETERS
from ..services.evaluation import evaluate_family

# CLI flag -> family parameter
PARAM_FLAGS = {
    "alpha": "alpha",
    "beta": "beta",
    "sigma": "sigma",
    "x1": "x1",
    "x2": "x2",
    "r": "r",
    "a0_sq": "a0-sq",
    "d": "d",
    "phase": "phase",
    "a": "a",
    "b": "b",
    "c": "c",
    "mu": "mu",
}


def add_param_flags(parser: argparse.ArgumentParser, names=None) -> None:
    for name, flag in PARAM_FLAGS.items():
        if names is None or name in names:
            parser.add_argument(f"--{flag}", dest=name, type=float, default=None)


def collect_params(args: argparse.Namespace, family: str) -> dict[str, float]:
    """Flags given on the command line that belong to `family`; the rest is a usage error."""
    params = {}
    for name, flag in PARAM_FLAGS.items():
        value = getattr(args, name, None)
        if value is None:
            continue
        if name not in FAMILY_PARAMETERS[family]:
            raise UsageError(f"--{flag} does not apply to family {family}")
        params[name] = value
    return params


def format_report(family: str, result) -> str:
    err = result.spectrum.trace_relative_error
    return (
        f"family={family} E={result.entropy_bits:.10g} bits converged={'true' if result.converged else 'false'} "
        f"n={result.grid.n} side={result.grid.side} delta={result.grid.delta:.6g} w={result.grid.w:.6g} "
        f"trace_rel_err={'' if err is None else f'{err:.3e}'}"
    )


def cmd_entangle(args: argparse.Namespace) -> int:
    params = collect_params(args, args.family)
    result = evaluate_family(args.family, params, tol_sigfigs=args.tol, which=args.which)
    print(format_report(args.family, result))
    return 0 if result.converged else 2


def register(subparsers) -> None:
    p = subparsers.add_parser("entangle", help="entropy of entanglement of one state")
    p.add_argument("family", choices=list(FAMILY_PARAMETERS))
    add_param_flags(p)
    p.add_argument("--which", type=int, choices=(1, 2), default=1, help="subsystem kept in the reduced kernel")
    p.add_argument("--tol", type=int, default=None, help="significant figures for convergence")
    p.set_defaults(func=cmd_entangle)
