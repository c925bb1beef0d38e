from __future__ import annotations

import logging
import os
from multiprocessing import Pool
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

from ..analytic import p_parameter
from ..errors import EntanglementError
from ..reduction import reduce_mixture
from ..schemas import PurificationReport, SwapOutcome, WidthScanRow
from ..settings import settings
from ..spectra import converge
from ..states import make_cat
from ..swap import swap_bell_finite, swap_cat

log = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_jobs(jobs: int | None) -> int:
    jobs = jobs if jobs is not None else settings.jobs
    return max(1, jobs if jobs is not None else (os.cpu_count() or 1))


def ordered_map(fn: Callable[[T], R], cells: Sequence[T], jobs: int | None = None) -> list[R]:
    """Map over cells, in parallel when jobs > 1; results keep the input order."""
    jobs = min(resolve_jobs(jobs), max(len(cells), 1))
    if jobs == 1:
        return [fn(c) for c in cells]
    with Pool(processes=jobs) as pool:
        return pool.map(fn, cells)


def _scan_cell(cell: tuple[complex, complex, float, float, float, float, int | None, float]) -> PurificationReport:
    a0, a1, d, mu, a, b, tol, e_initial = cell
    outcome = SwapOutcome(a=a, b=b, mu=mu)
    try:
        result = converge(reduce_mixture(swap_cat(a0, a1, d, outcome)), tol_sigfigs=tol)
    except EntanglementError as exc:
        log.warning("swap cell a=%g b=%g failed: %s", a, b, exc.detail)
        return PurificationReport(e_initial=e_initial, outcome=outcome, converged=False, error=exc.detail)
    return PurificationReport(
        e_initial=e_initial,
        e_swapped=result.entropy_bits,
        gain=result.entropy_bits - e_initial,
        outcome=outcome,
        converged=result.converged,
    )


def purification_scan(
    a0: complex,
    d: float,
    mu: float,
    a_grid: Iterable[float],
    b_grid: Iterable[float],
    jobs: int | None = None,
    tol_sigfigs: int | None = None,
) -> list[PurificationReport]:
    """Swap two copies of the cat (a0, sqrt(1 - |a0|^2), d) for every outcome (a, b).

    Reports come back row-major over a then b.
    """
    a0 = complex(a0)
    a1 = complex(np.sqrt(max(1.0 - abs(a0) ** 2, 0.0)))
    initial = converge(reduce_mixture(make_cat(a0, a1, d)), tol_sigfigs=tol_sigfigs)
    a_grid, b_grid = list(a_grid), list(b_grid)
    cells = [(a0, a1, d, mu, float(a), float(b), tol_sigfigs, initial.entropy_bits) for a in a_grid for b in b_grid]
    log.info("purification scan: %d cells, |a0|^2=%g d=%g mu=%g, E0=%.6f", len(cells), abs(a0) ** 2, d, mu, initial.entropy_bits)
    reports = ordered_map(_scan_cell, cells, jobs)
    log.info("purification scan: %d purified cells", sum(r.purified for r in reports))
    return reports


def finite_width_scan(alphas: Iterable[float], betas: Iterable[float], mus: Iterable[float], sigma: float = 1.0) -> list[WidthScanRow]:
    """P after a finite-resolution Gaussian swap against max(2 alpha^4, 2 beta^4)."""
    rows = []
    for alpha in alphas:
        for beta in betas:
            for mu in mus:
                state = swap_bell_finite(alpha, beta, 0.0, SwapOutcome(mu=mu), sigma)
                rows.append(
                    WidthScanRow(
                        alpha=alpha,
                        beta=beta,
                        mu=mu,
                        p_swapped=p_parameter(state).value,
                        p_initial=max(2.0 * alpha**4, 2.0 * beta**4),
                    )
                )
    bad = [r for r in rows if not r.increased]
    if bad:
        log.warning("finite-width swap lowered P in %d of %d cells", len(bad), len(rows))
    return rows
