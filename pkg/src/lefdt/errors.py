"""Exception hierarchy shared by every module."""


class LefdtError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LefdtError, ValueError):
    """An argument lies outside the domain of the operation."""


class UnsupportedAdjacencyError(DomainError):
    pass


class PreconditionError(LefdtError, ValueError):
    """A documented precondition (continuity, chain-map property, ...) fails."""


class DimensionGuardError(PreconditionError):
    """Cubical chain maps are only guaranteed for ambient dimension <= 4."""


class FormatError(LefdtError, ValueError):
    """An input file does not follow the documented JSON layout."""


class ResourceGuardError(LefdtError, RuntimeError):
    """A search exceeded its configured budget; results would be partial."""


class InternalError(LefdtError, RuntimeError):
    """An internal consistency check failed (e.g. a chain-map identity)."""
