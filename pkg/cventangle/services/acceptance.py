"""End-to-end numerical checks run by `cventangle verify`.

Each check returns a CheckResult; a check that raises is reported as failed.
"""
from __future__ import annotations

import logging
from typing import Callable

import numpy as np

from .. import reduction
from ..analytic import cat_entanglement, entanglement_from_p, p_parameter, squeezed_entanglement, swap_p
from ..errors import EntanglementError
from ..schemas import CheckResult, SwapOutcome
from ..spectra import converge, discretize, eig_hermitian
from ..states import (
    GridWavefunction,
    apply_entangler_grid,
    cat_amplitudes,
    make_bell,
    make_cat,
    make_squeezed,
)
from ..swap import swap_bell
from .evaluation import evaluate_family
from .purification import purification_scan

log = logging.getLogger(__name__)

PURIFICATION_PLANE = 0.881  # entropy of the |A0|^2 = 0.3 cat in the d -> infinity limit
SCAN_GRID = np.linspace(-2.0, 2.0, 11)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def check_squeezed() -> CheckResult:
    worst = 0.0
    for r in (0.3, 0.5, 1.0):
        k = reduction.reduce_gaussian(make_squeezed(r))
        res = converge(k, max_side=801)
        worst = max(worst, _rel(res.entropy_bits, squeezed_entanglement(r)))
    return CheckResult(name="squeezed", passed=bool(worst < 1e-6), detail=f"max rel err {worst:.2e}")


def check_trace() -> CheckResult:
    worst = 0.0
    for alpha in (0.5, 1.0, 2.0):
        for beta in (0.5, 1.0, 2.0):
            k = reduction.canonical_kernel(2.0 * alpha**2 * beta**2)
            dk = discretize(k, 100, k.window.half_width / 100)
            target = reduction.trace_analytic_bell(alpha, beta)
            spec = eig_hermitian(dk, trace_target=target)
            worst = max(worst, spec.trace_relative_error)
    return CheckResult(name="trace", passed=bool(worst < 5e-6), detail=f"max rel err {worst:.2e} at 2n+1=201")


def check_analytic() -> CheckResult:
    rng = np.random.default_rng(20)
    worst = 0.0
    for alpha, beta in rng.uniform(0.2, 2.0, size=(20, 2)):
        numeric = converge(reduction.reduce_gaussian(make_bell(alpha, beta))).entropy_bits
        worst = max(worst, abs(numeric - entanglement_from_p(2.0 * alpha**2 * beta**2)))
    return CheckResult(name="analytic", passed=bool(worst < 1e-4), detail=f"max abs diff {worst:.2e} over 20 (alpha, beta)")


def check_invariance() -> CheckResult:
    bell = [
        evaluate_family("bell", {"sigma": s, "x1": x1}).entropy_bits for s in (0.5, 1.0, 2.0) for x1 in (0.0, 1.0, 5.0)
    ]
    swapped = [
        converge(reduction.reduce_gaussian(swap_bell(0.8, 1.3, 0.0, SwapOutcome(a=a, b=b)))).entropy_bits
        for a, b in ((0.0, 0.0), (3.0, -2.0), (1.0, 1.0), (-2.0, 0.5))
    ]
    spread = max(np.ptp(bell), np.ptp(swapped))
    return CheckResult(name="invariance", passed=bool(spread < 1e-8), detail=f"max spread {spread:.2e}")


def check_cat() -> CheckResult:
    half = evaluate_family("cat", {"a0_sq": 0.5, "d": 1.0}).entropy_bits
    closed = cat_entanglement(*cat_amplitudes(0.5), 1.0)
    ok_bench = abs(half - closed) < 1e-3
    fractions = np.round(np.arange(1, 10) * 0.1, 10)
    ok_max = True
    for d in (0.5, 1.0, 1.5):
        e = [evaluate_family("cat", {"a0_sq": f, "d": d}).entropy_bits for f in fractions]
        ok_max &= bool(fractions[int(np.argmax(e))] == 0.5)
    far = evaluate_family("cat", {"a0_sq": 0.3, "d": 4.0}).entropy_bits
    limit = -0.3 * np.log2(0.3) - 0.7 * np.log2(0.7)
    ok_far = abs(far - limit) < 1e-3
    return CheckResult(
        name="cat",
        passed=bool(ok_bench and ok_max and ok_far),
        detail=f"E(0.5,1)={half:.4f} (closed {closed:.4f}), max at 0.5: {ok_max}, E(0.3,4)={far:.4f}",
    )


def check_no_purification() -> CheckResult:
    grid = np.linspace(0.2, 2.0, 21)[1:]
    ok = True
    for alpha in grid:
        for beta in grid:
            p_sw = swap_p(alpha, beta).value
            ok &= p_sw >= max(2.0 * alpha**4, 2.0 * beta**4)
            ok &= entanglement_from_p(p_sw) <= min(entanglement_from_p(2.0 * alpha**4), entanglement_from_p(2.0 * beta**4))
            ok &= abs(p_parameter(swap_bell(alpha, beta, 0.0, SwapOutcome())).value - p_sw) <= 1e-9 * p_sw
    return CheckResult(name="no-purification", passed=bool(ok), detail="20x20 (alpha, beta) grid")


def check_purification() -> CheckResult:
    a0 = np.sqrt(0.3)
    sharp = purification_scan(a0, 1.0, 0.0, SCAN_GRID, SCAN_GRID)
    blurred = purification_scan(a0, 1.0, 0.5, SCAN_GRID, SCAN_GRID)
    best = max(r.e_swapped or 0.0 for r in sharp)
    n_sharp = sum(r.purified for r in sharp)
    n_blur = sum(r.purified for r in blurred)
    return CheckResult(
        name="purification",
        passed=bool(best > PURIFICATION_PLANE and n_blur < n_sharp),
        detail=f"max E={best:.4f}, purified cells mu=0: {n_sharp}, mu=0.5: {n_blur}",
    )


def check_moments() -> CheckResult:
    worst = 0.0
    kernels = (reduction.reduce_gaussian(make_bell(1.0, 1.0)), reduction.reduce_mixture(make_cat(*cat_amplitudes(0.5), 1.0)))
    for k in kernels:
        res = converge(k)
        n = 3 * res.grid.n // 2
        delta = res.grid.w / n
        for order in (1, 2, 3):
            quad = reduction.trace_power(k, order, n, delta)
            worst = max(worst, _rel(res.spectrum.moment(order), quad))
    return CheckResult(name="moments", passed=bool(worst < 1e-5), detail=f"max rel err {worst:.2e}")


def check_gates() -> CheckResult:
    alpha, beta, x1 = 1.2, 0.8, 0.5
    n, delta = 150, 0.05

    def product(x, y):
        return np.exp(-((x - x1) ** 2) / alpha**2 - y**2 / beta**2)

    out = apply_entangler_grid(GridWavefunction.sample(product, n, delta))
    closed = GridWavefunction.sample(make_bell(alpha, beta, x1, 0.0).amplitude, n, delta)
    err = float(np.abs(out.values - alpha * closed.values).max())
    return CheckResult(name="gates", passed=bool(err < 1e-6), detail=f"max-norm error {err:.2e} on n=150, delta=0.05")


CHECKS: dict[str, Callable[[], CheckResult]] = {
    "squeezed": check_squeezed,
    "trace": check_trace,
    "analytic": check_analytic,
    "invariance": check_invariance,
    "cat": check_cat,
    "no-purification": check_no_purification,
    "purification": check_purification,
    "moments": check_moments,
    "gates": check_gates,
}


def run_checks(names: list[str] | None = None) -> list[CheckResult]:
    selected = list(CHECKS) if not names else names
    unknown = [n for n in selected if n not in CHECKS]
    if unknown:
        raise EntanglementError(f"unknown checks: {', '.join(unknown)} (available: {', '.join(CHECKS)})")
    results = []
    for name in selected:
        log.info("running check %s", name)
        try:
            results.append(CHECKS[name]())
        except EntanglementError as exc:
            results.append(CheckResult(name=name, passed=False, detail=f"error: {exc.detail}"))
    return results
