from __future__ import annotations

from typing import Mapping

from ..errors import DomainError
from ..reduction import DensityKernel, reduce_gaussian, reduce_mixture
from ..schemas import FAMILY_PARAMETERS, EntanglementResult, GaussianBipartiteState, GaussianMixtureState, SwapOutcome
from ..spectra import converge
from ..states import cat_amplitudes, make_bell, make_cat, make_squeezed
from ..swap import swap_bell, swap_bell_finite, swap_cat


def family_params(family: str, params: Mapping[str, float] | None = None) -> dict[str, float]:
    """Family defaults overlaid with `params`; unknown names are rejected."""
    if family not in FAMILY_PARAMETERS:
        raise DomainError(f"unknown family {family!r} (expected one of {', '.join(FAMILY_PARAMETERS)})")
    merged = dict(FAMILY_PARAMETERS[family])
    for key, value in (params or {}).items():
        if key not in merged:
            raise DomainError(f"'{key}' is not a parameter of family {family} ({', '.join(merged)})")
        merged[key] = float(value)
    return merged


def build_state(family: str, params: Mapping[str, float] | None = None) -> GaussianBipartiteState | GaussianMixtureState:
    p = family_params(family, params)
    if family == "bell":
        return make_bell(p["alpha"], p["beta"], p["x1"], p["x2"], p["sigma"])
    if family == "squeezed":
        return make_squeezed(p["r"])
    if family == "cat":
        return make_cat(*cat_amplitudes(p["a0_sq"], p["phase"]), p["d"])
    if family == "swap-bell":
        outcome = SwapOutcome(a=p["a"], b=p["b"], mu=p["mu"])
        swap = swap_bell if outcome.mu == 0 else swap_bell_finite
        return swap(p["alpha"], p["beta"], p["c"], outcome, p["sigma"])
    # swap-cat
    a0, a1 = cat_amplitudes(p["a0_sq"])
    return swap_cat(a0, a1, p["d"], SwapOutcome(a=p["a"], b=p["b"], mu=p["mu"]))


def reduce_state(state: GaussianBipartiteState | GaussianMixtureState, which: int = 1) -> DensityKernel:
    if isinstance(state, GaussianMixtureState):
        return reduce_mixture(state, which)
    return reduce_gaussian(state, which)


def evaluate_family(
    family: str, params: Mapping[str, float] | None = None, tol_sigfigs: int | None = None, which: int = 1
) -> EntanglementResult:
    """Build, reduce and converge one state of a family."""
    return converge(reduce_state(build_state(family, params), which), tol_sigfigs=tol_sigfigs)
