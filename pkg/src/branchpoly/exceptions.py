"""Exception hierarchy shared by all modules."""


class PolymerError(Exception):
    """Base class for errors raised by branchpoly."""


class StructureError(PolymerError, ValueError):
    """A tree, angle or length table is malformed."""


class DomainError(PolymerError, ValueError):
    """Input outside the domain of an operation (e.g. a disconnected graph)."""


class CapacityError(PolymerError):
    """Input too large for an exponential-time algorithm."""


class OrderingError(PolymerError, ValueError):
    """A vertex order has a disconnected prefix."""


class GeometryError(PolymerError, RuntimeError):
    """A growth state violates its constraints beyond tolerance."""
