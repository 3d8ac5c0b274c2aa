"""Exception types shared across the package."""


class BNError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatchError(BNError):
    """Two ring elements with different genus parameters were combined."""


class NonNilpotentError(BNError):
    """A power series was requested for an element with a constant term."""


class NotAPointClassError(BNError):
    """Degree evaluation was requested for a class that is not a multiple of the top class."""


class InvalidFlagError(BNError):
    """The rank data of a filtered degeneracy problem violates the Porteous hypotheses."""


class InvalidMultiplicityError(BNError):
    """A vanishing sequence is not strictly decreasing or is out of range."""


class ConfigurationError(BNError):
    """Ranks are too small for the requested construction."""


class VacuousProblemError(BNError):
    """Every rank condition is vacuous, so the locus is the whole space."""


class BudgetExceededError(BNError):
    """An exhaustive search was requested outside the supported size limits."""


class NotApplicableError(BNError):
    """A quantity was requested in a situation where it is undefined."""
