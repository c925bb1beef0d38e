from __future__ import annotations

import logging

from pydantic import ValidationError

from ..errors import EntanglementError
from ..schemas import SweepRow, SweepSpec
from .evaluation import evaluate_family
from .purification import ordered_map

log = logging.getLogger(__name__)


def _sweep_cell(cell: tuple[str, dict[str, float], int, float, float | None]) -> SweepRow:
    family, params, tol, v1, v2 = cell
    try:
        result = evaluate_family(family, params, tol_sigfigs=tol)
    except (EntanglementError, ValidationError) as exc:
        log.warning("sweep cell %s=%g %s failed: %s", family, v1, "" if v2 is None else f"/{v2:g}", exc)
        return SweepRow(axis1=v1, axis2=v2, converged=False)
    return SweepRow(
        axis1=v1,
        axis2=v2,
        entropy_bits=result.entropy_bits,
        converged=result.converged,
        trace_rel_err=result.spectrum.trace_relative_error,
    )


def run_sweep(spec: SweepSpec, jobs: int | None = None) -> list[SweepRow]:
    """Evaluate every cell of the sweep, rows in row-major order (axis1 outer)."""
    second = spec.axis2.values() if spec.axis2 is not None else [None]
    cells = []
    for v1 in spec.axis1.values():
        for v2 in second:
            v2 = None if v2 is None else float(v2)
            cells.append((spec.family, spec.cell_params(v1, v2), spec.tolerance_sigfigs, float(v1), v2))
    log.info("sweep %s: %d cells", spec.family, len(cells))
    rows = ordered_map(_sweep_cell, cells, jobs)
    failed = sum(not r.converged for r in rows)
    if failed:
        log.warning("sweep %s: %d of %d cells did not converge", spec.family, failed, len(rows))
    return rows
