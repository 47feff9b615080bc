"""Exception hierarchy shared by every divfield module."""


class DivfieldError(Exception):
    """Base class for all divfield failures."""


class InvalidParameterError(DivfieldError, ValueError):
    """An argument lies outside the documented parameter range."""


class NonUnitError(InvalidParameterError):
    """A residue that must be invertible is divisible by p."""


class PrecisionError(DivfieldError):
    """A p-adic computation ran out of known digits."""


class BudgetExceeded(DivfieldError):
    """A size guard or retry budget was exhausted."""


class HypothesisViolation(DivfieldError):
    """Input violates the hypotheses the factorization rules rely on."""


class BadReductionError(HypothesisViolation):
    """The curve has bad reduction where good reduction is required."""


class OracleMismatch(DivfieldError):
    """Two independent computations of the same quantity disagree."""
