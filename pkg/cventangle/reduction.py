"""Reduced density kernels rho(x, x') of bipartite pure states."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .errors import BoundaryMassError, DomainError
from .schemas import GaussianBipartiteState, GaussianMixtureState, KernelWindow
from .settings import settings
from .states import GridWavefunction

log = logging.getLogger(__name__)

KernelFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class DensityKernel:
    """Hermitian two-point function with the window it lives in.

    `evaluate` equals exp(log_scale) times the exact partial trace of the
    (unnormalized) state it came from. The factor is kept in log space because
    it over- or underflows for shifted and widely separated states; entropies
    do not see it.
    """

    evaluate: KernelFn
    window: KernelWindow
    trace_analytic: float | None = None
    hermitian: bool = True
    log_scale: float = 0.0
    sampler: Callable[[np.ndarray], np.ndarray] | None = None
    label: str = "kernel"

    def sample(self, points: np.ndarray) -> np.ndarray:
        """Matrix rho(points[p], points[q])."""
        points = np.asarray(points, dtype=float)
        if self.sampler is not None:
            return self.sampler(points)
        X, Xp = np.meshgrid(points, points, indexing="ij")
        return np.asarray(self.evaluate(X, Xp), dtype=complex)

    def grid(self, n: int, delta: float) -> np.ndarray:
        return self.window.center + (np.arange(2 * n + 1) - n) * delta


def kernel_window(center: float, std: float, multiple: float | None = None) -> KernelWindow:
    multiple = settings.window_std_multiple if multiple is None else multiple
    return KernelWindow.from_std(center, std, multiple)


def _which(which: int) -> None:
    if which not in (1, 2):
        raise DomainError(f"which must be 1 or 2, got {which}")


# -------- Gaussian states
def reduce_gaussian(state: GaussianBipartiteState, which: Literal[1, 2] = 1) -> DensityKernel:
    """Integrate the other variable out of psi psi* by completing the square.

    rho(x, x') = sqrt(pi/2b) exp(-A(x^2 + x'^2) + 2C x x' + L x + conj(L) x' + K0)
    with A = a - c^2/2b, C = c^2/2b, L = d + c Re(e)/b, K0 = Re(e)^2/2b.

    The kernel is evaluated around the peak of its diagonal, x0 = Re(L)/kappa,
    where it reads sqrt(pi/2b) exp(-A(u^2 + u'^2) + 2C u u' + i Im(L)(u - u'))
    with u = x - x0. The peak exponent Re(L)^2/kappa + K0 goes to log_scale.
    """
    _which(which)
    if which == 1:
        a, b, d, e = state.a_q, state.b_q, complex(state.d_l), complex(state.e_l)
    else:
        a, b, d, e = state.b_q, state.a_q, complex(state.e_l), complex(state.d_l)
    c = state.c_q

    C = c * c / (2.0 * b)
    A = a - C
    L = d + c * e.real / b
    K0 = e.real**2 / (2.0 * b)
    pref = np.sqrt(np.pi / (2.0 * b))
    kappa = 2.0 * (A - C)  # diagonal coefficient, > 0 because ab > c^2
    x0 = L.real / kappa
    kick = L.imag

    def evaluate(x, xp):
        u = np.asarray(x, dtype=float) - x0
        up = np.asarray(xp, dtype=float) - x0
        return pref * np.exp(-A * (u * u + up * up) + 2.0 * C * u * up + 1j * kick * (u - up))

    return DensityKernel(
        evaluate=evaluate,
        window=kernel_window(x0, 1.0 / np.sqrt(2.0 * kappa)),
        trace_analytic=float(pref * np.sqrt(np.pi / kappa)),
        log_scale=-(L.real**2 / kappa + K0),
        label=f"gaussian rho{which}",
    )


def canonical_kernel(p: float) -> DensityKernel:
    """exp(-(1 + P)(x^2 + x'^2) + 2 x x'), trace sqrt(pi / 2P)."""
    if not np.isfinite(p) or p <= 0:
        raise DomainError(f"P must be positive for the canonical kernel, got {p}")

    def evaluate(x, xp):
        x = np.asarray(x, dtype=float)
        xp = np.asarray(xp, dtype=float)
        return np.exp(-(1.0 + p) * (x * x + xp * xp) + 2.0 * x * xp).astype(complex)

    return DensityKernel(
        evaluate=evaluate,
        window=kernel_window(0.0, 1.0 / (2.0 * np.sqrt(p))),
        trace_analytic=float(np.sqrt(np.pi / (2.0 * p))),
        label=f"canonical P={p:g}",
    )


def trace_analytic_bell(alpha: float, beta: float) -> float:
    """Sum of the eigenvalues of the canonical Bell kernel, sqrt(pi) / (2 alpha beta)."""
    if not (alpha > 0 and beta > 0):
        raise DomainError(f"alpha and beta must be positive, got {alpha}, {beta}")
    return float(np.sqrt(np.pi) / (2.0 * alpha * beta))


def canonical_bell_kernel(alpha: float, beta: float) -> DensityKernel:
    trace = trace_analytic_bell(alpha, beta)
    k = canonical_kernel(2.0 * alpha * alpha * beta * beta)
    return DensityKernel(evaluate=k.evaluate, window=k.window, trace_analytic=trace, label=f"bell alpha={alpha:g} beta={beta:g}")


# -------- Mixtures of unit-width Gaussians
def reduce_mixture(state: GaussianMixtureState, which: Literal[1, 2] = 1) -> DensityKernel:
    """sum_jk c_j conj(c_k) exp(-D_jk/2) exp(-(x - u_j)^2 - (x' - u_k)^2) / max|c|^2.

    u are the centers of the kept variable, v those of the traced one and
    D_jk = (v_j - v_k)^2. This is the exact partial trace divided by
    sqrt(pi/2) max|c|^2, so every weight is at most 1 in modulus. Multiplying
    by exp(Dmax/2) instead gives the cat kernel with its exp(2 d^2 delta_jk)
    factor, which overflows once d approaches 19.
    """
    _which(which)
    coeff = state.coefficients
    u = state.centers(which)
    v = state.centers(2 if which == 1 else 1)

    c_max = float(np.abs(coeff).max())
    unit = coeff / c_max
    D = (v[:, None] - v[None, :]) ** 2
    weights = np.outer(unit, np.conj(unit)) * np.exp(-D / 2.0)

    overlap_u = np.sqrt(np.pi / 2.0) * np.exp(-((u[:, None] - u[None, :]) ** 2) / 2.0)
    trace = float(np.real(np.sum(weights * overlap_u)))

    live = u[coeff != 0]
    center = 0.5 * (live.min() + live.max())
    std = 1.0 / np.sqrt(2.0) + 0.5 * (live.max() - live.min())

    def evaluate(x, xp):
        x = np.asarray(x, dtype=float)
        xp = np.asarray(xp, dtype=float)
        ex = np.exp(-((x[..., None] - u) ** 2))
        exp_ = np.exp(-((xp[..., None] - u) ** 2))
        return np.einsum("...j,jk,...k->...", ex, weights, exp_)

    def sampler(points):
        E = np.exp(-((points[:, None] - u[None, :]) ** 2))
        return E @ weights @ E.T

    return DensityKernel(
        evaluate=evaluate,
        window=kernel_window(center, std),
        trace_analytic=trace,
        log_scale=-(0.5 * np.log(np.pi / 2.0) + 2.0 * np.log(c_max)),
        sampler=sampler,
        label=f"mixture rho{which} ({len(coeff)} terms)",
    )


# -------- Quadrature oracle
def reduce_numeric(
    psi: GridWavefunction | Callable[[np.ndarray, np.ndarray], np.ndarray],
    which: Literal[1, 2] = 1,
    window: KernelWindow | None = None,
    delta: float | None = None,
    tol: float | None = None,
) -> DensityKernel:
    """rho(x, x') = integral psi(x, y) conj(psi(x', y)) dy by the rectangle rule.

    A GridWavefunction is traced over its own lattice and can only be evaluated
    at lattice points. A callable is traced over `window` (which then bounds both
    variables) with spacing `delta`, std/20 by default.
    """
    _which(which)
    tol = settings.boundary_mass_tolerance if tol is None else tol
    if isinstance(psi, GridWavefunction):
        return _reduce_grid(psi, which, window, tol)
    if window is None:
        raise DomainError("reduce_numeric needs a window for a callable wavefunction")

    delta = window.std_estimate / 20.0 if delta is None else delta
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    m = int(np.ceil(window.half_width / delta))
    ys = window.center + (np.arange(2 * m + 1) - m) * delta
    log.debug("quadrature partial trace over %d nodes, delta=%.4g", ys.size, delta)

    def amp(x, y):
        return psi(x, y) if which == 1 else psi(y, x)

    X, Y = np.meshgrid(ys, ys, indexing="ij")
    sampled = GridWavefunction(n=m, delta=delta, values=amp(X, Y))
    sampled.check_boundary(tol, "wavefunction inside the quadrature window")

    def evaluate(x, xp):
        x = np.asarray(x, dtype=float)
        xp = np.asarray(xp, dtype=float)
        f = amp(x[..., None], ys)
        g = amp(xp[..., None], ys)
        return delta * np.sum(f * np.conj(g), axis=-1)

    def sampler(points):
        V = amp(points[:, None], ys[None, :])
        return delta * (V @ V.conj().T)

    return DensityKernel(evaluate=evaluate, window=window, sampler=sampler, label=f"quadrature rho{which}")


def _reduce_grid(w: GridWavefunction, which: int, window: KernelWindow | None, tol: float) -> DensityKernel:
    w.check_boundary(tol)
    V = w.values if which == 1 else w.values.T
    rho = w.delta * (V @ V.conj().T)

    def index(x):
        k = np.asarray(x, dtype=float) / w.delta + w.n
        idx = np.rint(k).astype(int)
        if np.any(np.abs(k - idx) > 1e-9) or np.any(idx < 0) or np.any(idx >= w.side):
            raise DomainError("grid kernels can only be evaluated at lattice points inside the grid")
        return idx

    def evaluate(x, xp):
        return rho[index(x), index(xp)]

    if window is None:
        extent = w.n * w.delta
        window = KernelWindow(center=0.0, half_width=max(extent, w.delta), std_estimate=max(extent, w.delta) / 10.0)
    return DensityKernel(evaluate=evaluate, window=window, label=f"grid rho{which}")


# -------- Traces
def trace_quadrature(kernel: DensityKernel, n: int, delta: float) -> float:
    """Integral of rho(x, x) over the kernel window, rectangle rule."""
    pts = kernel.grid(n, delta)
    diag = kernel.evaluate(pts, pts)
    return float(delta * np.sum(np.real(diag)))


def trace_power(kernel: DensityKernel, order: int, n: int, delta: float) -> float:
    """Tr(rho^order) by composing the kernel with itself on the rectangle grid."""
    if order < 1:
        raise DomainError(f"order must be >= 1, got {order}")
    if order == 1:
        return trace_quadrature(kernel, n, delta)
    m = delta * kernel.sample(kernel.grid(n, delta))
    return float(np.real(np.trace(np.linalg.matrix_power(m, order))))


def check_kernel_decay(kernel: DensityKernel, n: int = 200, tol: float = 1e-12, stretch: float = 1.2) -> None:
    """Raise when |rho| just outside the window is not negligible against its peak."""
    pts = kernel.grid(n, stretch * kernel.window.half_width / n)
    mag = np.abs(kernel.sample(pts))
    peak = mag.max()
    if peak == 0:
        return
    edge = max(mag[0, :].max(), mag[-1, :].max())
    if edge / peak > tol:
        raise BoundaryMassError(f"{kernel.label}: edge/peak = {edge / peak:.3e} inside its window")
