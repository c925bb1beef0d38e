"""Complex Gaussian exponents over named variables.

A form stands for exp(-v^T Q v + l^T v + k) with Q complex symmetric. The gates
and measurements of the swapping protocols map forms to forms: a CNOT is a linear
substitution, F is a Gaussian integral against exp(+-2i x y / sigma^2), a
projection onto a Gaussian wavepacket is a product followed by an integral, and a
sharp projection is an evaluation. The constant k keeps the logarithm of the
prefactor so coefficients of different mixture terms stay comparable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import DomainError
from .schemas import GaussianBipartiteState


@dataclass(frozen=True)
class GaussianForm:
    variables: tuple[str, ...]
    quad: np.ndarray = field(repr=False)
    lin: np.ndarray = field(repr=False)
    const: complex = 0j

    def __post_init__(self):
        n = len(self.variables)
        if len(set(self.variables)) != n:
            raise DomainError(f"duplicate variable names in {self.variables}")
        q = np.array(self.quad, dtype=complex).reshape(n, n)
        l = np.array(self.lin, dtype=complex).reshape(n)
        object.__setattr__(self, "quad", 0.5 * (q + q.T))
        object.__setattr__(self, "lin", l)
        object.__setattr__(self, "const", complex(self.const))

    # -------- construction
    @classmethod
    def from_bipartite(cls, state: GaussianBipartiteState, names: tuple[str, str]) -> "GaussianForm":
        q = [[state.a_q, -state.c_q], [-state.c_q, state.b_q]]
        return cls(tuple(names), np.array(q), np.array([state.d_l, state.e_l]))

    @classmethod
    def displaced(cls, centers: Mapping[str, float], width: float = 1.0) -> "GaussianForm":
        """prod_v exp(-(v - c_v)^2 / width^2)."""
        names = tuple(centers)
        c = np.array([centers[v] for v in names], dtype=float)
        w2 = width * width
        return cls(names, np.eye(len(names)) / w2, 2.0 * c / w2, -np.sum(c * c) / w2)

    def index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise DomainError(f"variable {var!r} not in {self.variables}") from None

    def _embed(self, names: tuple[str, ...]) -> tuple[np.ndarray, np.ndarray]:
        pos = [names.index(v) for v in self.variables]
        q = np.zeros((len(names), len(names)), dtype=complex)
        l = np.zeros(len(names), dtype=complex)
        q[np.ix_(pos, pos)] = self.quad
        l[pos] = self.lin
        return q, l

    # -------- algebra
    def product(self, other: "GaussianForm") -> "GaussianForm":
        names = self.variables + tuple(v for v in other.variables if v not in self.variables)
        q1, l1 = self._embed(names)
        q2, l2 = other._embed(names)
        return GaussianForm(names, q1 + q2, l1 + l2, self.const + other.const)

    def substitute(self, var: str, combination: Mapping[str, complex], shift: complex = 0.0) -> "GaussianForm":
        """Replace `var` by sum_u combination[u] u + shift.

        The result keeps every other variable; `var` survives only if it appears
        in `combination`. New names in `combination` are appended.
        """
        i = self.index(var)
        names = tuple(v for v in self.variables if v != var or var in combination)
        names += tuple(v for v in combination if v not in names)
        T = np.zeros((len(self.variables), len(names)), dtype=complex)
        for r, v in enumerate(self.variables):
            if r == i:
                for u, coef in combination.items():
                    T[r, names.index(u)] = coef
            else:
                T[r, names.index(v)] = 1.0
        s = np.zeros(len(self.variables), dtype=complex)
        s[i] = shift
        q, l = self.quad, self.lin
        return GaussianForm(
            names,
            T.T @ q @ T,
            T.T @ (l - 2.0 * q @ s),
            self.const - s @ q @ s + l @ s,
        )

    def evaluate_at(self, var: str, value: float) -> "GaussianForm":
        """Sharp projection <value| on `var`."""
        return self.substitute(var, {}, shift=value)

    def integrate_out(self, var: str) -> "GaussianForm":
        """Integral over `var` on the real line (Schur complement)."""
        i = self.index(var)
        qxx = self.quad[i, i]
        if not qxx.real > 0:
            raise DomainError(f"integral over {var!r} diverges (Re q = {qxx.real:g})")
        keep = [j for j in range(len(self.variables)) if j != i]
        qu = self.quad[keep, i]
        lx = self.lin[i]
        return GaussianForm(
            tuple(self.variables[j] for j in keep),
            self.quad[np.ix_(keep, keep)] - np.outer(qu, qu) / qxx,
            self.lin[keep] - lx * qu / qxx,
            self.const + lx * lx / (4.0 * qxx) + 0.5 * np.log(np.pi / qxx),
        )

    def fourier(self, var: str, sigma: float = 1.0, inverse: bool = False) -> "GaussianForm":
        """(1 / sqrt(pi) sigma) integral exp(+-2i x y / sigma^2) psi(x) dx, result in the same name."""
        tmp = f"{var}~"
        sign = -1.0 if inverse else 1.0
        # -2 q_xt x t = +-2i x t / sigma^2
        phase = GaussianForm((var, tmp), [[0.0, -1j * sign / sigma**2], [-1j * sign / sigma**2, 0.0]], [0.0, 0.0], -np.log(np.sqrt(np.pi) * sigma))
        out = self.product(phase).integrate_out(var)
        return out.rename(tmp, var)

    def project(self, var: str, value: float, width: float = 0.0) -> "GaussianForm":
        """<G(value)| on `var`, G = exp(-(v - value)^2 / width^2); width 0 is the sharp limit."""
        if width < 0:
            raise DomainError(f"projection width must be >= 0, got {width}")
        if width == 0:
            return self.evaluate_at(var, value)
        return self.product(GaussianForm.displaced({var: value}, width)).integrate_out(var)

    def rename(self, old: str, new: str) -> "GaussianForm":
        if new in self.variables and new != old:
            raise DomainError(f"variable {new!r} already present")
        names = tuple(new if v == old else v for v in self.variables)
        return GaussianForm(names, self.quad, self.lin, self.const)

    def __call__(self, **point: float) -> complex:
        v = np.array([point[name] for name in self.variables], dtype=float)
        return complex(np.exp(-v @ self.quad @ v + self.lin @ v + self.const))

    # -------- read back
    def _pair(self, x: str, y: str) -> tuple[int, int]:
        if set(self.variables) != {x, y}:
            raise DomainError(f"expected variables {{{x}, {y}}}, form has {self.variables}")
        return self.index(x), self.index(y)

    def to_bipartite(self, x: str, y: str, sigma: float = 1.0, rtol: float = 1e-9) -> GaussianBipartiteState:
        i, j = self._pair(x, y)
        q = self.quad
        scale = np.abs(q).max()
        if np.abs(q.imag).max() > rtol * scale:
            raise DomainError("quadratic part is not real; not a GaussianBipartiteState")
        return GaussianBipartiteState(
            a_q=float(q[i, i].real),
            b_q=float(q[j, j].real),
            c_q=float(-q[i, j].real),
            d_l=complex(self.lin[i]),
            e_l=complex(self.lin[j]),
            sigma=sigma,
        )

    def to_displaced(self, x: str, y: str, rtol: float = 1e-9) -> tuple[complex, float, float]:
        """(coefficient, cx, cy) of a unit-width displaced product form."""
        i, j = self._pair(x, y)
        q = self.quad[np.ix_([i, j], [i, j])]
        if np.abs(q - np.eye(2)).max() > rtol:
            raise DomainError("form is not a unit-width product Gaussian")
        l = self.lin[[i, j]]
        if np.abs(l.imag).max() > rtol * max(1.0, np.abs(l).max()):
            raise DomainError("form carries a momentum kick; not a displaced Gaussian")
        cx, cy = float(l[0].real) / 2.0, float(l[1].real) / 2.0
        return complex(np.exp(self.const + cx * cx + cy * cy)), cx, cy
