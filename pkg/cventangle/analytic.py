"""Closed-form entanglement of Gaussian and two-term cat states.

Every Gaussian bipartite state is fixed, up to local unitaries, by the single
parameter P = 2(ab/c^2 - 1); its Schmidt weights are geometric with ratio
xi = 1 / (1 + P + sqrt(P^2 + 2P)), the same as a two-mode squeezed state with
sinh^2(2r) = 2/P.
"""
from __future__ import annotations

import numpy as np
from scipy.special import entr

from .errors import DomainError, SeparableStateError
from .schemas import GaussianBipartiteState, PParameter, SqueezingParameter

_LN2 = np.log(2.0)


def _value(p: PParameter | float) -> float:
    return p.value if isinstance(p, PParameter) else float(p)


def _r(r: SqueezingParameter | float) -> float:
    r = r.r if isinstance(r, SqueezingParameter) else float(r)
    if not np.isfinite(r) or r < 0:
        raise DomainError(f"squeezing parameter must be >= 0, got {r}")
    return r


def p_parameter(state: GaussianBipartiteState) -> PParameter:
    if state.c_q == 0:
        raise SeparableStateError("c_q = 0: the state is a product, P is unbounded and E = 0")
    value = 2.0 * (state.a_q * state.b_q / state.c_q**2 - 1.0)
    if value < 0:
        raise DomainError(f"a_q*b_q < c_q^2 gives P = {value:g} < 0; the state is not normalizable")
    return PParameter(value=value)


def squeezed_entanglement(r: SqueezingParameter | float) -> float:
    """cosh^2 r log2 cosh^2 r - sinh^2 r log2 sinh^2 r."""
    s2 = np.sinh(_r(r)) ** 2
    if s2 == 0:
        return 0.0
    # (1+s)ln(1+s) - s ln s written without the cancellation at large r
    return float((np.log1p(s2) + s2 * np.log1p(1.0 / s2)) / _LN2)


def squeezing_from_p(p: PParameter | float) -> SqueezingParameter:
    """Invert P = 2 cosech^2(2r)."""
    value = _value(p)
    if not value > 0:
        raise DomainError(f"P must be positive to map onto a finite squeezing, got {value}")
    return SqueezingParameter(r=0.5 * float(np.arcsinh(np.sqrt(2.0 / value))))


def entanglement_from_p(p: PParameter | float) -> float:
    """E(P); +inf at P = 0, the perfectly correlated limit."""
    value = _value(p)
    if value < 0 or np.isnan(value):
        raise DomainError(f"P must be >= 0, got {value}")
    if value == 0:
        return float("inf")
    return squeezed_entanglement(squeezing_from_p(value))


def schmidt_ratio(p: PParameter | float) -> float:
    value = _value(p)
    if not value > 0:
        raise DomainError(f"P must be positive, got {value}")
    return float(1.0 / (1.0 + value + np.sqrt(value * value + 2.0 * value)))


def number_basis_weights(r: SqueezingParameter | float, terms: int = 200) -> np.ndarray:
    """(1/cosh^2 r) tanh^(2n) r for n < terms."""
    r = _r(r)
    t2 = np.tanh(r) ** 2
    return np.power(t2, np.arange(terms)) / np.cosh(r) ** 2


def geometric_weights(p: PParameter | float, terms: int = 200) -> np.ndarray:
    xi = schmidt_ratio(p)
    return (1.0 - xi) * np.power(xi, np.arange(terms))


def weights_entropy(weights) -> float:
    """-sum w log2 w, weights taken as given."""
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0):
        raise DomainError("weights must be nonnegative")
    return float(np.sum(entr(w)) / _LN2)


def swap_width_factor(alpha: float, beta: float) -> float:
    """g(alpha, beta) = alpha^4 + alpha^2 beta^2 + 1."""
    return alpha**4 + alpha**2 * beta**2 + 1.0


def swap_p(alpha: float, beta: float) -> PParameter:
    """P of the state left after swapping B_alpha,alpha with B_beta,beta."""
    if not (alpha > 0 and beta > 0):
        raise DomainError(f"alpha and beta must be positive, got {alpha}, {beta}")
    return PParameter(value=2.0 * (swap_width_factor(alpha, beta) * swap_width_factor(beta, alpha) - 1.0))


def cat_schmidt_weights(a0: complex, a1: complex, d: float) -> np.ndarray:
    """Normalized Schmidt weights (descending) of A0|d>|-d> + A1|-d>|d>.

    The two kept wavepackets overlap by o = exp(-2 d^2), as do the traced ones,
    so the reduced operator is a 2x2 problem with trace 1 + 2 o^2 Re(A0 conj A1)
    and determinant |A0 A1|^2 (1 - o^2)^2.
    """
    if d < 0:
        raise DomainError(f"d must be >= 0, got {d}")
    o2 = np.exp(-4.0 * d * d)
    tr = abs(a0) ** 2 + abs(a1) ** 2 + 2.0 * o2 * (a0 * np.conj(a1)).real
    if not tr > 0:
        raise DomainError("the cat amplitudes cancel: the state is zero")
    det = abs(a0 * a1) ** 2 * (1.0 - o2) ** 2
    root = np.sqrt(max(tr * tr - 4.0 * det, 0.0))
    lam = np.array([(tr + root) / 2.0, (tr - root) / 2.0])
    return np.clip(lam / tr, 0.0, None)


def cat_entanglement(a0: complex, a1: complex, d: float) -> float:
    return weights_entropy(cat_schmidt_weights(a0, a1, d))
