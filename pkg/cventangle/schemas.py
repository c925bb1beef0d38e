from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True)


# -------- States
class GaussianBipartiteState(_Frozen):
    """psi(x, y) = exp(-a x^2 - b y^2 + 2c x y + d x + e y), unnormalized.

    Coefficients already carry the scale length; `sigma` is kept so callers can
    report which scale the state was built with.
    """

    a_q: float
    b_q: float
    c_q: float
    d_l: complex = 0j
    e_l: complex = 0j
    sigma: float = Field(default=1.0, gt=0)

    @model_validator(mode="after")
    def check_integrable(self):
        if self.a_q <= 0 or self.b_q <= 0:
            raise ValueError("a_q and b_q must be positive")
        if self.a_q * self.b_q <= self.c_q**2:
            raise ValueError("quadratic form is not negative definite (a_q*b_q <= c_q^2)")
        return self

    @property
    def determinant(self) -> float:
        return self.a_q * self.b_q - self.c_q**2

    def amplitude(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return np.exp(
            -self.a_q * x**2 - self.b_q * y**2 + 2.0 * self.c_q * x * y + self.d_l * x + self.e_l * y
        )


class MixtureTerm(_Frozen):
    coeff: complex
    cx: float
    cy: float


class GaussianMixtureState(_Frozen):
    """psi(x, y) = sum_j coeff_j exp(-(x - cx_j)^2 - (y - cy_j)^2)."""

    terms: tuple[MixtureTerm, ...] = Field(min_length=1)

    @model_validator(mode="after")
    def check_nonzero(self):
        if all(t.coeff == 0 for t in self.terms):
            raise ValueError("at least one mixture term needs a nonzero coefficient")
        return self

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([t.coeff for t in self.terms], dtype=complex)

    def centers(self, which: int) -> np.ndarray:
        if which == 1:
            return np.array([t.cx for t in self.terms], dtype=float)
        return np.array([t.cy for t in self.terms], dtype=float)

    def amplitude(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape, dtype=complex)
        for t in self.terms:
            out = out + t.coeff * np.exp(-((x - t.cx) ** 2) - (y - t.cy) ** 2)
        return out


# -------- Kernels and spectra
class KernelWindow(_Frozen):
    center: float = 0.0
    half_width: float = Field(gt=0)
    std_estimate: float = Field(gt=0)

    @classmethod
    def from_std(cls, center: float, std: float, multiple: float = 10.0) -> "KernelWindow":
        return cls(center=center, half_width=multiple * std, std_estimate=std)


class Spectrum(_Frozen):
    eigenvalues: tuple[float, ...]
    raw_sum: float
    trace_target: float | None = None
    trace_relative_error: float | None = None

    @model_validator(mode="after")
    def check_sorted(self):
        ev = self.eigenvalues
        if any(ev[i] < ev[i + 1] for i in range(len(ev) - 1)):
            raise ValueError("eigenvalues must be sorted in descending order")
        return self

    @classmethod
    def from_eigenvalues(cls, values, trace_target: float | None = None) -> "Spectrum":
        ev = np.sort(np.asarray(values, dtype=float))[::-1]
        raw = float(ev.sum())
        rel = None
        if trace_target is not None and trace_target != 0:
            rel = abs(raw - trace_target) / abs(trace_target)
        return cls(eigenvalues=tuple(ev.tolist()), raw_sum=raw, trace_target=trace_target, trace_relative_error=rel)

    def moment(self, order: int) -> float:
        ev = np.asarray(self.eigenvalues)
        return float(np.sum(ev**order))

    def weights(self) -> np.ndarray:
        ev = np.clip(np.asarray(self.eigenvalues), 0.0, None)
        return ev / ev.sum()


class GridInfo(_Frozen):
    n: int = Field(ge=0)
    delta: float = Field(gt=0)
    w: float = Field(ge=0)

    @property
    def side(self) -> int:
        return 2 * self.n + 1


class EntanglementResult(_Frozen):
    entropy_bits: float = Field(ge=0)
    spectrum: Spectrum
    grid: GridInfo
    converged: bool
    refinements: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def check_bound(self):
        # entropy of 2n+1 weights cannot exceed log2(2n+1)
        if self.entropy_bits > np.log2(self.grid.side) + 1e-9:
            raise ValueError("entropy exceeds log2 of the matrix side")
        return self


# -------- Analytic parameters
class PParameter(_Frozen):
    value: float = Field(ge=0)


class SqueezingParameter(_Frozen):
    r: float = Field(ge=0)


# -------- Swapping
class SwapOutcome(_Frozen):
    a: float = 0.0
    b: float = 0.0
    mu: float = Field(default=0.0, ge=0)


class PurificationReport(_Frozen):
    e_initial: float = Field(ge=0)
    e_swapped: float | None = Field(default=None, ge=0)
    gain: float | None = None
    outcome: SwapOutcome
    converged: bool = True
    error: str | None = None

    @property
    def purified(self) -> bool:
        return self.gain is not None and self.gain > 0


# -------- Sweeps
Family = Literal["bell", "squeezed", "cat", "swap-bell", "swap-cat"]

FAMILY_PARAMETERS: dict[str, dict[str, float]] = {
    "bell": {"alpha": 1.0, "beta": 1.0, "sigma": 1.0, "x1": 0.0, "x2": 0.0},
    "squeezed": {"r": 0.5},
    "cat": {"a0_sq": 0.5, "d": 1.0, "phase": 0.0},
    "swap-bell": {"alpha": 1.0, "beta": 1.0, "sigma": 1.0, "a": 0.0, "b": 0.0, "c": 0.0, "mu": 0.0},
    "swap-cat": {"a0_sq": 0.3, "d": 1.0, "mu": 0.0, "a": 0.0, "b": 0.0},
}


class SweepAxis(_Frozen):
    name: str
    min: float
    max: float
    steps: int = Field(default=11, ge=1)

    @model_validator(mode="after")
    def check_range(self):
        if self.min > self.max:
            raise ValueError(f"axis {self.name}: min > max")
        return self

    def values(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.min])
        return np.linspace(self.min, self.max, self.steps)


class SweepSpec(_Frozen):
    family: Family
    axis1: SweepAxis
    axis2: SweepAxis | None = None
    fixed: dict[str, float] = Field(default_factory=dict)
    tolerance_sigfigs: int = Field(default=5, ge=1, le=12)

    @model_validator(mode="after")
    def check_names(self):
        allowed = FAMILY_PARAMETERS[self.family]
        names = [self.axis1.name] + ([self.axis2.name] if self.axis2 else [])
        for name in names + list(self.fixed):
            if name not in allowed:
                raise ValueError(f"'{name}' is not a parameter of family {self.family} ({', '.join(allowed)})")
        if len(set(names)) != len(names):
            raise ValueError("sweep axes must be distinct")
        return self

    def cell_params(self, v1: float, v2: float | None) -> dict[str, float]:
        params = dict(FAMILY_PARAMETERS[self.family])
        params.update(self.fixed)
        params[self.axis1.name] = float(v1)
        if self.axis2 is not None:
            params[self.axis2.name] = float(v2)
        return params


class SweepRow(_Frozen):
    axis1: float
    axis2: float | None = None
    entropy_bits: float | None = None
    converged: bool
    trace_rel_err: float | None = None


class CheckResult(_Frozen):
    name: str
    passed: bool
    detail: str = ""


class WidthScanRow(_Frozen):
    alpha: float
    beta: float
    mu: float
    p_swapped: float
    p_initial: float

    @property
    def increased(self) -> bool:
        return self.p_swapped >= self.p_initial
