"""Exception types shared across the package."""


class FatPointsError(Exception):
    """Base class for all library-specific errors."""


class InvalidGridError(FatPointsError, ValueError):
    """A multiplicity grid failed validation."""


class InvalidSchemeError(FatPointsError, ValueError):
    """Scheme data (multiplicities plus coordinates) is inconsistent."""


class NotACMError(FatPointsError, ValueError):
    """An operation requires an arithmetically Cohen-Macaulay scheme."""


class PointNotInSupportError(FatPointsError, ValueError):
    """The requested point has multiplicity zero."""


class WindowError(FatPointsError, ValueError):
    """A Hilbert table window cannot accommodate the request."""


class WindowInsufficiencyError(FatPointsError, RuntimeError):
    """Enlarging the generator search window changed the result."""
