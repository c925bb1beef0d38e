"""Nyström discretization, Hermitian eigensolve and entropy of entanglement."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.special import entr

from .errors import DomainError, KernelNotPositiveError, NumericalError, ResourceError
from .reduction import DensityKernel
from .schemas import EntanglementResult, GridInfo, Spectrum
from .settings import settings

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiscretizedKernel:
    """entries[p, q] = delta * rho(center + p delta, center + q delta), p, q in [-n, n]."""

    n: int
    delta: float
    entries: np.ndarray = field(repr=False)
    center: float = 0.0
    trace_target: float | None = None

    def __post_init__(self):
        side = 2 * self.n + 1
        if self.entries.shape != (side, side):
            raise DomainError(f"entries must be {side}x{side}, got {self.entries.shape}")
        self.entries.setflags(write=False)

    @property
    def side(self) -> int:
        return 2 * self.n + 1

    @property
    def w(self) -> float:
        return self.n * self.delta

    @property
    def grid(self) -> GridInfo:
        return GridInfo(n=self.n, delta=self.delta, w=self.w)


def discretize(kernel: DensityKernel, n: int, delta: float, max_side: int | None = None) -> DiscretizedKernel:
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    cap = settings.max_matrix_side if max_side is None else max_side
    side = 2 * n + 1
    if side > cap:
        raise ResourceError(f"matrix side {side} exceeds the configured cap {cap}")

    m = delta * kernel.sample(kernel.grid(n, delta))
    if not np.all(np.isfinite(m)):
        raise NumericalError(f"{kernel.label}: non-finite kernel samples at n={n}, delta={delta:g}")
    scale = np.abs(m).max()
    if scale > 0:
        asym = np.abs(m - m.conj().T).max() / scale
        if asym > settings.hermitian_tolerance:
            raise NumericalError(f"{kernel.label}: sampled kernel is not Hermitian (relative defect {asym:.2e})")
    # remove rounding-level asymmetry before the Hermitian solver reads one triangle
    m = 0.5 * (m + m.conj().T)
    return DiscretizedKernel(n=n, delta=delta, entries=m, center=kernel.window.center, trace_target=kernel.trace_analytic)


def eig_hermitian(m: DiscretizedKernel, trace_target: float | None = None) -> Spectrum:
    """All eigenvalues, descending, with the trace check against the target."""
    target = m.trace_target if trace_target is None else trace_target
    try:
        vals = scipy.linalg.eigh(m.entries, eigvals_only=True, check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"Hermitian eigensolve failed on a {m.side}x{m.side} matrix: {exc}") from exc
    if not np.all(np.isfinite(vals)):
        raise NumericalError("Hermitian eigensolve returned non-finite eigenvalues")

    raw = float(vals.sum())
    lowest = float(vals.min())
    if lowest < -settings.negative_eigenvalue_tolerance * abs(raw):
        raise KernelNotPositiveError(
            f"eigenvalue {lowest:.3e} is below -{settings.negative_eigenvalue_tolerance:g} * trace ({raw:.3e})"
        )
    return Spectrum.from_eigenvalues(vals, trace_target=target)


def entropy(s: Spectrum) -> float:
    """-sum p log2 p over the normalized spectrum; zero weights contribute nothing."""
    if not s.raw_sum > 0:
        raise DomainError(f"spectrum sum must be positive, got {s.raw_sum}")
    p = s.weights()
    return max(float(np.sum(entr(p)) / np.log(2.0)), 0.0)


def converge(
    kernel: DensityKernel,
    tol_sigfigs: int | None = None,
    n0: int | None = None,
    trace_target: float | None = None,
    max_side: int | None = None,
) -> EntanglementResult:
    """Refine the grid until the trace and the entropy are both settled.

    Level k uses n = n0 2^k and half-width w0 sqrt(2)^k, so the spacing shrinks by
    sqrt(2) while the window grows. A level passes when sum(lambda) matches the
    trace to tol_sigfigs; two passing levels whose entropies differ by less than
    10^-tol_sigfigs end the search.
    """
    tol_sigfigs = settings.tolerance_sigfigs if tol_sigfigs is None else tol_sigfigs
    n = settings.start_half_count if n0 is None else n0
    cap = settings.max_matrix_side if max_side is None else max_side
    target = kernel.trace_analytic if trace_target is None else trace_target
    if target is None:
        raise DomainError(f"{kernel.label}: converge needs an analytic or supplied trace target")
    if 2 * n + 1 > cap:
        log.warning("starting half-count %d exceeds the matrix cap %d; clamping", n, cap)
        n = max((cap - 1) // 2, 0)

    eps = 10.0 ** (-tol_sigfigs)
    w = kernel.window.half_width
    prev_ok, prev_e = False, None
    best: EntanglementResult | None = None
    level = 0
    while True:
        delta = w / n if n > 0 else w
        spec = eig_hermitian(discretize(kernel, n, delta, max_side=cap), trace_target=target)
        e_bits = entropy(spec)
        trace_ok = spec.trace_relative_error is not None and spec.trace_relative_error < eps
        settled = prev_e is not None and abs(e_bits - prev_e) < eps
        log.debug(
            "%s level %d: n=%d delta=%.4g E=%.10g trace_err=%.2e", kernel.label, level, n, delta, e_bits, spec.trace_relative_error
        )
        done = trace_ok and prev_ok and settled
        best = EntanglementResult(
            entropy_bits=e_bits,
            spectrum=spec,
            grid=GridInfo(n=n, delta=delta, w=n * delta),
            converged=done,
            refinements=level,
        )
        if done:
            return best
        if n == 0 or 2 * (2 * n) + 1 > cap:
            log.info("%s: not converged before the matrix cap %d (E=%.6g)", kernel.label, cap, e_bits)
            return best
        prev_ok, prev_e = trace_ok, e_bits
        n *= 2
        w *= np.sqrt(2.0)
        level += 1
