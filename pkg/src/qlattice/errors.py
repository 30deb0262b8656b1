"""Exception types shared across the package."""

from __future__ import annotations


class QLatticeError(Exception):
    """Base class for all package-specific errors."""


class InvalidLatticeError(QLatticeError):
    """The lattice cannot supply a usable evaluation grid."""


class NormalFormError(QLatticeError):
    """The lattice is not in the normal form this operation requires."""


class DegenerateParameterError(QLatticeError):
    """A parameter set makes a required denominator or pivot vanish."""


class ClassificationScopeError(QLatticeError):
    """Classification would need roots outside the rational numbers."""


class ExpansionError(QLatticeError):
    """A basis expansion left a nonzero residual.

    The offending residual polynomial is attached as ``residual``.
    """

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual
