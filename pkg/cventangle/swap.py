"""Entanglement swapping for Gaussian and cat pairs.

Bob holds particles 2 and 4 (Gaussian protocol) or 2 and 3 (cat protocol),
applies the reverse entangler F2^dagger C^dagger and measures both particles.
The state left on the remaining pair is returned unnormalized.
"""
from __future__ import annotations

import numpy as np

from .errors import DomainError
from .gaussian_algebra import GaussianForm
from .schemas import GaussianBipartiteState, GaussianMixtureState, MixtureTerm, SwapOutcome
from .states import require_positive, make_bell, make_cat
from .analytic import swap_width_factor


def swap_factor_h(mu: float) -> float:
    """h(mu) = 2 / (2 + 2 mu^2 + mu^4); 1 for sharp measurements."""
    if mu < 0:
        raise DomainError(f"mu must be >= 0, got {mu}")
    return 2.0 / (2.0 + 2.0 * mu**2 + mu**4)


def swap_bell(alpha: float, beta: float, c: float, outcome: SwapOutcome, sigma: float = 1.0) -> GaussianBipartiteState:
    """Pair (1, 3) after sharp measurements a, b on B_aa(0, c)_12 B_bb(0, c)_34.

    The displacement c drops out of the result.
    """
    require_positive(alpha=alpha, beta=beta, sigma=sigma)
    if outcome.mu != 0:
        raise DomainError("swap_bell is the sharp-measurement closed form; use swap_bell_finite for mu > 0")
    a, b = outcome.a, outcome.b
    k = 1.0 / (sigma**2 * (alpha**2 + beta**2))
    return GaussianBipartiteState(
        a_q=swap_width_factor(alpha, beta) * k,
        b_q=swap_width_factor(beta, alpha) * k,
        c_q=k,
        d_l=complex(-2.0 * b, -2.0 * a * beta**2) * k,
        e_l=complex(2.0 * b, -2.0 * a * alpha**2) * k,
        sigma=sigma,
    )


def swap_bell_finite(alpha: float, beta: float, c: float, outcome: SwapOutcome, sigma: float = 1.0) -> GaussianBipartiteState:
    """Gaussian swap with projections onto G_mu(a), G_mu(b) of width mu sigma.

    Built gate by gate; mu = 0 falls back to sharp projections and agrees with
    swap_bell.
    """
    require_positive(alpha=alpha, beta=beta, sigma=sigma)
    form = GaussianForm.from_bipartite(make_bell(alpha, alpha, 0.0, c, sigma), ("x1", "x2")).product(
        GaussianForm.from_bipartite(make_bell(beta, beta, 0.0, c, sigma), ("x3", "x4"))
    )
    width = outcome.mu * sigma
    form = form.substitute("x4", {"x4": 1.0, "x2": 1.0})  # C24^dagger
    form = form.fourier("x2", sigma, inverse=True)
    form = form.project("x2", outcome.a, width).project("x4", outcome.b, width)
    return form.to_bipartite("x1", "x3", sigma)


def swap_mixture(first: GaussianMixtureState, second: GaussianMixtureState, outcome: SwapOutcome) -> GaussianMixtureState:
    """Cat-protocol swap of any two unit-width mixtures, term by term.

    Particles 1, 2 come from `first`, 3, 4 from `second`; the result lives on
    (1, 4) with terms ordered row-major over (first term, second term).
    """
    terms = []
    for s in first.terms:
        for t in second.terms:
            form = GaussianForm.displaced({"x1": s.cx, "x2": s.cy}).product(GaussianForm.displaced({"x3": t.cx, "x4": t.cy}))
            form = form.substitute("x3", {"x3": 1.0, "x2": 1.0})  # C23^dagger
            form = form.fourier("x2", inverse=True)
            form = form.project("x2", outcome.a, outcome.mu).project("x3", outcome.b, outcome.mu)
            coeff, cx, cy = form.to_displaced("x1", "x4")
            terms.append((s.coeff * t.coeff * coeff, cx, cy))
    peak = max(abs(c) for c, _, _ in terms)
    return GaussianMixtureState(terms=tuple(MixtureTerm(coeff=c / peak, cx=cx, cy=cy) for c, cx, cy in terms))


def swap_cat(a0: complex, a1: complex, d: float, outcome: SwapOutcome) -> GaussianMixtureState:
    """Closed form of the cat swap.

    Term (j, k), s_j = (-1)^j, has centers (s_j d, -s_k d) and coefficient
    A_j A_k exp(d b h (s_j + m s_k) - 2 h d^2 delta_jk) exp(i a d h (m s_j - s_k))
    with m = 1 + mu^2.
    """
    cat = make_cat(a0, a1, d)
    amps = [t.coeff for t in cat.terms]
    h = swap_factor_h(outcome.mu)
    m = 1.0 + outcome.mu**2
    a, b = outcome.a, outcome.b
    terms = []
    for j in (0, 1):
        for k in (0, 1):
            sj, sk = (-1.0) ** j, (-1.0) ** k
            mag = d * b * h * (sj + m * sk) - (2.0 * h * d * d if j == k else 0.0)
            phase = a * d * h * (m * sj - sk)
            coeff = amps[j] * amps[k] * np.exp(mag + 1j * phase)
            terms.append(MixtureTerm(coeff=coeff, cx=sj * d, cy=-sk * d))
    return GaussianMixtureState(terms=tuple(terms))
