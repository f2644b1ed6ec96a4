"""Exception types shared across the package."""

from __future__ import annotations


class SlackspaceError(Exception):
    """Base class for all package errors."""


class ShapeError(SlackspaceError):
    """Matrix dimensions incompatible with the requested operation."""


class RankError(SlackspaceError):
    """Exact rank differs from what the operation requires."""


class ResourceLimitExceeded(SlackspaceError):
    """A Groebner-type computation hit a configured resource limit.

    Carries the partial state so callers can inspect how far it got.
    """

    def __init__(self, message, partial_basis=None):
        super().__init__(message)
        self.partial_basis = partial_basis or []


class DimensionUndefinedError(SlackspaceError):
    """Krull dimension requested for the trivial ideal."""


class NotFlagConnectedError(SlackspaceError):
    """No flag exists in the given incidence structure."""


class InvalidBasisError(SlackspaceError):
    """A facet basis choice is inconsistent with the cone or degenerate."""


class CannotNormalizeError(SlackspaceError):
    """Support bipartite graph is disconnected or override is not a tree."""


class NotASubspaceError(SlackspaceError):
    """A claimed Pluecker vector violates the quadratic relations."""


class ReductionError(SlackspaceError):
    """A facet subset is not a valid reduction (names the violated condition)."""


class InvalidFlagError(SlackspaceError):
    """Chosen flag columns have an identically-zero spanning minor."""


class ReconstructionImpossibleError(SlackspaceError):
    """Row reconstruction kernel is zero-dimensional."""


class CertificateInvalidError(SlackspaceError):
    """A derivation chain step is malformed or its identity fails."""

    def __init__(self, message, step_index=None):
        super().__init__(message)
        self.step_index = step_index
