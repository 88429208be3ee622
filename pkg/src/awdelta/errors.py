"""Exception types shared across the package."""


class AWError(Exception):
    """Base class for all errors raised by awdelta."""


class PreconditionError(AWError, ValueError):
    """An operation was called with arguments outside its domain."""


class OutsideFieldError(AWError):
    """A required root does not lie in the Gaussian rationals.

    ``coefficients`` holds the unsolved polynomial, lowest degree first.
    """

    def __init__(self, message, coefficients=None):
        super().__init__(message)
        self.coefficients = coefficients


class VerificationError(AWError):
    """An identity that must hold exactly was found to fail."""
