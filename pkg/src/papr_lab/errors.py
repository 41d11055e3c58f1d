"""Exception hierarchy shared by every papr_lab module."""


class PaprLabError(Exception):
    """Base class for all library errors."""


class InvalidParameterError(PaprLabError, ValueError):
    pass


class InvalidGeneratorError(InvalidParameterError):
    """Generator polynomial does not divide X^n + 1."""


class CapacityError(PaprLabError):
    """Requested enumeration is beyond the exhaustive-search bound."""


class ConstructionError(PaprLabError):
    """A code construction failed its own self-check."""


class UndefinedPaprError(PaprLabError, ValueError):
    """PAPR of an all-zero signal."""


class InsufficientDataError(PaprLabError):
    """The CCDF never reaches the requested level."""
