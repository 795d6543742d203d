"""Exception types shared across the package."""


class TwistcheckError(Exception):
    """Base class for all package errors."""


class InvalidInputError(TwistcheckError):
    """Raised when an argument violates a documented precondition."""


class UnsupportedError(TwistcheckError):
    """Raised when the requested computation is outside the supported catalog."""


class ResourceLimitError(TwistcheckError):
    """Raised when a computation exceeds a configured size bound."""
