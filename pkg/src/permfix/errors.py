"""Exception hierarchy shared by all modules."""
from __future__ import annotations

from .core.permutation import PermutationError


class PermfixError(Exception):
    pass


class ValidationError(PermfixError, PermutationError):
    """Malformed input data (non-bijections, bad interchange files)."""


class MembershipError(PermfixError):
    """An element or subgroup is not contained where it must be."""


class DomainError(PermfixError):
    """A point lies outside the permutation domain."""


class ResourceError(PermfixError):
    """A computation would exceed the configured desk-scale bound."""


class PreconditionError(PermfixError):
    """The hypotheses of an operation are not met."""


class KernelError(PreconditionError):
    """An action that must be faithful has a nontrivial kernel."""

    def __init__(self, message: str, kernel=None):
        super().__init__(message)
        self.kernel = kernel


class FixtureIntegrityError(PermfixError):
    pass
