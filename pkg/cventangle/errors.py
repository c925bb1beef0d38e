from __future__ import annotations


class EntanglementError(Exception):
    """Base error of the package. `detail` is the human readable reason."""

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class DomainError(EntanglementError, ValueError):
    """A parameter lies outside the domain of the operation."""


class NormalizationError(EntanglementError, ValueError):
    """Cat amplitudes do not satisfy |a0|^2 + |a1|^2 = 1."""


class SeparableStateError(EntanglementError):
    """The state has no cross term, so P is undefined (E = 0)."""


class BoundaryMassError(EntanglementError):
    """The wavefunction or kernel is not negligible at the edge of the grid."""


class ResourceError(EntanglementError):
    """The requested matrix exceeds the configured size cap."""


class NumericalError(EntanglementError):
    """The eigensolver failed or produced non-finite values."""


class KernelNotPositiveError(NumericalError):
    """An eigenvalue is negative beyond discretization noise."""


class UsageError(EntanglementError):
    """Malformed command line."""
