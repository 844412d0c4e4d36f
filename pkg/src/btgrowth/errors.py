"""Exception types shared across the package."""


class GrowthError(Exception):
    """Base class for domain errors raised by this package."""


class InvalidRank(GrowthError):
    """Family/rank combination is not a valid irreducible Cartan type."""


class DimensionMismatch(GrowthError):
    """Vector dimension does not match the ambient rank."""


class NotDominant(GrowthError):
    """Coweight has a negative pairing with a simple root."""


class NotInGroup(GrowthError):
    """Translation part lies outside the coroot lattice."""


class UnknownNormalization(GrowthError):
    """Metric normalization tag is not recognized."""


class InsufficientSamples(GrowthError):
    """Too few samples for a regression window."""


class NonpositiveVolume(GrowthError):
    """Volume sequence contains a zero or negative entry."""


class DomainError(GrowthError):
    """Argument outside the domain of an operation or closed formula."""


class BudgetExceeded(GrowthError):
    """Enumeration or generation would exceed the configured element budget."""

    def __init__(self, message, size=None):
        super().__init__(message)
        self.size = size
