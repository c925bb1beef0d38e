"""Entanglement of continuous-variable bipartite states.

Closed-form Gaussian and cat-like states, their reduced density kernels, the
discretized von Neumann entropy and entanglement swapping.
"""
from .analytic import entanglement_from_p, p_parameter, squeezed_entanglement
from .errors import EntanglementError
from .reduction import reduce_gaussian, reduce_mixture
from .spectra import converge, entropy
from .states import make_bell, make_cat, make_product, make_squeezed
from .swap import swap_bell, swap_bell_finite, swap_cat, swap_mixture

__all__ = [
    "EntanglementError",
    "converge",
    "entanglement_from_p",
    "entropy",
    "make_bell",
    "make_cat",
    "make_product",
    "make_squeezed",
    "p_parameter",
    "reduce_gaussian",
    "reduce_mixture",
    "squeezed_entanglement",
    "swap_bell",
    "swap_bell_finite",
    "swap_cat",
    "swap_mixture",
]
