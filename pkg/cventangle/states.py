"""State families and the continuous gates.

Gaussian states are stored by their exponent coefficients and are left
unnormalized; every downstream entropy normalizes the spectrum instead.
The grid gates act on sampled wavefunctions and exist to check the closed
forms independently.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from .errors import BoundaryMassError, DomainError, NormalizationError
from .schemas import GaussianBipartiteState, GaussianMixtureState, MixtureTerm
from .settings import settings


def require_positive(**values: float) -> None:
    for name, v in values.items():
        if not np.isfinite(v) or v <= 0:
            raise DomainError(f"{name} must be strictly positive, got {v}")


# -------- Closed-form constructors
def make_product(alpha: float, beta: float, x1: float = 0.0, x2: float = 0.0, sigma: float = 1.0) -> GaussianBipartiteState:
    """|G_alpha(x1)>|G_beta(x2)>, the two wavepackets before the entangler.

    G_alpha(x1)(x) = exp(-(x - x1)^2 / (alpha sigma)^2); constant factors dropped.
    """
    require_positive(alpha=alpha, beta=beta, sigma=sigma)
    s2 = sigma * sigma
    return GaussianBipartiteState(
        a_q=1.0 / (alpha**2 * s2),
        b_q=1.0 / (beta**2 * s2),
        c_q=0.0,
        d_l=2.0 * x1 / (alpha**2 * s2),
        e_l=2.0 * x2 / (beta**2 * s2),
        sigma=sigma,
    )


def make_bell(alpha: float, beta: float, x1: float = 0.0, x2: float = 0.0, sigma: float = 1.0) -> GaussianBipartiteState:
    """Partially correlated state C12 F1 |G_alpha(x1)>|G_beta(x2)>.

    The Fourier integral and the shear are done by hand: F sends G_alpha(x1) to
    alpha exp((-alpha^2 x^2 + 2i x1 x) / sigma^2), and the CNOT replaces y by y - x
    in the second factor. The overall constant is dropped.
    """
    require_positive(alpha=alpha, beta=beta, sigma=sigma)
    s2 = sigma * sigma
    inv_b2 = 1.0 / (beta * beta)
    return GaussianBipartiteState(
        a_q=(alpha * alpha + inv_b2) / s2,
        b_q=inv_b2 / s2,
        c_q=inv_b2 / s2,
        d_l=complex(-2.0 * x2 * inv_b2, 2.0 * x1) / s2,
        e_l=2.0 * x2 * inv_b2 / s2,
        sigma=sigma,
    )


def make_squeezed(r: float) -> GaussianBipartiteState:
    if not np.isfinite(r) or r < 0:
        raise DomainError(f"squeezing parameter must be >= 0, got {r}")
    ch = np.cosh(2.0 * r) / 2.0
    return GaussianBipartiteState(a_q=ch, b_q=ch, c_q=-np.sinh(2.0 * r) / 2.0)


def make_cat(a0: complex, a1: complex, d: float) -> GaussianMixtureState:
    """A0|d>|-d> + A1|-d>|d> with unit-width Gaussians."""
    if not np.isfinite(d) or d < 0:
        raise DomainError(f"cat separation d must be >= 0, got {d}")
    norm = abs(a0) ** 2 + abs(a1) ** 2
    if abs(norm - 1.0) > settings.normalization_tolerance:
        raise NormalizationError(f"|a0|^2 + |a1|^2 = {norm!r}, expected 1")
    return GaussianMixtureState(
        terms=(
            MixtureTerm(coeff=complex(a0), cx=d, cy=-d),
            MixtureTerm(coeff=complex(a1), cx=-d, cy=d),
        )
    )


def cat_amplitudes(a0_sq: float, phase: float = 0.0) -> tuple[complex, complex]:
    """Amplitudes (A0, A1) from |A0|^2 and the relative phase of A1."""
    if not 0.0 <= a0_sq <= 1.0:
        raise DomainError(f"|a0|^2 must lie in [0, 1], got {a0_sq}")
    return complex(np.sqrt(a0_sq)), complex(np.sqrt(1.0 - a0_sq) * np.exp(1j * phase))


# -------- Grid representation
@dataclass(frozen=True)
class GridWavefunction:
    """psi sampled at (x_p, y_q) = (p delta, q delta), p, q in [-n, n]."""

    n: int
    delta: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"half-count must be >= 0, got {self.n}")
        if not self.delta > 0:
            raise DomainError(f"grid spacing must be positive, got {self.delta}")
        vals = np.array(self.values, dtype=complex)
        if vals.shape != (self.side, self.side):
            raise DomainError(f"values must have shape {(self.side, self.side)}, got {vals.shape}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def side(self) -> int:
        return 2 * self.n + 1

    @property
    def axis(self) -> np.ndarray:
        return (np.arange(self.side) - self.n) * self.delta

    @classmethod
    def sample(cls, amplitude: Callable[[np.ndarray, np.ndarray], np.ndarray], n: int, delta: float) -> "GridWavefunction":
        coords = (np.arange(2 * n + 1) - n) * delta
        X, Y = np.meshgrid(coords, coords, indexing="ij")
        return cls(n=n, delta=delta, values=amplitude(X, Y))

    def boundary_mass(self) -> float:
        """Largest |psi| on the grid edge relative to the peak."""
        mag = np.abs(self.values)
        peak = mag.max()
        if peak == 0:
            return 0.0
        edge = max(mag[0, :].max(), mag[-1, :].max(), mag[:, 0].max(), mag[:, -1].max())
        return float(edge / peak)

    def check_boundary(self, tol: float | None = None, what: str = "wavefunction") -> None:
        tol = settings.boundary_mass_tolerance if tol is None else tol
        mass = self.boundary_mass()
        if mass > tol:
            raise BoundaryMassError(f"{what} reaches the grid edge (edge/peak = {mass:.3e} > {tol:.1e}); widen the grid")


# -------- Grid gates
def apply_fourier_grid(
    w: GridWavefunction, subsystem: Literal[1, 2], sigma: float = 1.0, inverse: bool = False, tol: float | None = None
) -> GridWavefunction:
    """F (or F^dagger) by dense rectangle-rule quadrature along one axis.

    Kernel (1 / sqrt(pi) sigma) exp(+-2i x y / sigma^2).
    """
    require_positive(sigma=sigma)
    if subsystem not in (1, 2):
        raise DomainError(f"subsystem must be 1 or 2, got {subsystem}")
    w.check_boundary(tol, "input of F")
    x = w.axis
    sign = -1.0 if inverse else 1.0
    kern = (w.delta / (np.sqrt(np.pi) * sigma)) * np.exp(sign * 2j * np.outer(x, x) / sigma**2)
    if subsystem == 1:
        out = kern @ w.values
    else:
        out = w.values @ kern.T
    res = GridWavefunction(n=w.n, delta=w.delta, values=out)
    res.check_boundary(tol, "output of F")
    return res


def apply_cnot_grid(w: GridWavefunction, direction: Literal["forward", "inverse"] = "forward", tol: float | None = None) -> GridWavefunction:
    """out(x, y) = in(x, y - x) forward, in(x, y + x) inverse.

    x and y share the spacing, so the shear moves whole lattice steps.
    """
    if direction not in ("forward", "inverse"):
        raise DomainError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    tol = settings.boundary_mass_tolerance if tol is None else tol
    side, n = w.side, w.n
    src = w.values
    out = np.zeros_like(src)
    peak = np.abs(src).max()
    dropped = 0.0
    for i in range(side):
        s = i - n if direction == "forward" else n - i
        # out[i, j] = src[i, j - s]
        lo, hi = max(0, s), min(side, side + s)
        if lo < hi:
            out[i, lo:hi] = src[i, lo - s : hi - s]
        lost = np.concatenate((src[i, : max(0, -s)], src[i, side - max(0, s) :]))
        if lost.size:
            dropped = max(dropped, float(np.abs(lost).max()))
    if peak > 0 and dropped / peak > tol:
        raise BoundaryMassError(f"CNOT shear pushes amplitude off the grid (lost/peak = {dropped / peak:.3e})")
    return GridWavefunction(n=n, delta=w.delta, values=out)


def apply_entangler_grid(w: GridWavefunction, sigma: float = 1.0, tol: float | None = None) -> GridWavefunction:
    """E = C12 F1."""
    return apply_cnot_grid(apply_fourier_grid(w, 1, sigma, tol=tol), "forward", tol=tol)


def apply_disentangler_grid(w: GridWavefunction, sigma: float = 1.0, tol: float | None = None) -> GridWavefunction:
    """E^dagger = F1^dagger C12^dagger."""
    return apply_fourier_grid(apply_cnot_grid(w, "inverse", tol=tol), 1, sigma, inverse=True, tol=tol)
