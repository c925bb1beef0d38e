from __future__ import annotations

import argparse
import logging
import sys

from pydantic import ValidationError

from .commands import entangle, swap, sweep, verify
from .errors import EntanglementError, UsageError
from .settings import settings

log = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=settings.app_name, description="Entropy of entanglement of continuous-variable states.")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    entangle.register(subparsers)
    sweep.register(subparsers)
    swap.register(subparsers)
    verify.register(subparsers)
    return parser


def main(argv: list[str] | None = None) -> int:
    """Exit codes: 0 ok, 1 usage or domain error, 2 not converged, 3 a check failed."""
    logging.basicConfig(level=settings.log_level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except EntanglementError as exc:
        log.debug("command failed", exc_info=True)
        print(f"error: {exc.detail}", file=sys.stderr)
        return 1
