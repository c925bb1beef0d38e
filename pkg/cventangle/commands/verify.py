from __future__ import annotations

import argparse

from ..services.acceptance import CHECKS, run_checks


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_checks(args.only)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL'}  {r.detail}")
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 3 if failed else 0


def register(subparsers) -> None:
    p = subparsers.add_parser("verify", help="run the numerical acceptance checks")
    p.add_argument("--only", nargs="+", choices=list(CHECKS), help="run a subset of checks")
    p.set_defaults(func=cmd_verify)
