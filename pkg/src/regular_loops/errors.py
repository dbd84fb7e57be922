"""
Exception hierarchy for regular-loops.

Every error raised on purpose by the package derives from RegularLoopsError so
the CLI can report it as a domain error (exit code 1).
"""


class RegularLoopsError(Exception):
    """Base class for all domain errors"""


class InvalidInputError(RegularLoopsError, ValueError):
    """Input violates a documented precondition"""


class BudgetError(RegularLoopsError):
    """A configured resource budget would be exceeded"""


class NumericalError(RegularLoopsError):
    """A numerical routine could not deliver a trustworthy answer"""


# Multigraph construction
class NotInvolution(InvalidInputError):
    pass


class FixedPoint(InvalidInputError):
    pass


class OddHalfEdges(InvalidInputError):
    pass


class IndexOutOfRange(InvalidInputError, IndexError):
    pass


# Walks and loops
class LengthOutOfRange(InvalidInputError):
    pass


class NotChained(InvalidInputError):
    pass


class NotClosed(InvalidInputError):
    pass


class Backtracking(InvalidInputError):
    pass


# Spectra
class DomainError(InvalidInputError):
    pass


class TooFewEigenvalues(InvalidInputError):
    pass


class MissingPerron(InvalidInputError):
    pass


class ConvergenceFailure(NumericalError):
    pass


class SpectralUnavailable(NumericalError):
    pass


class DivisibilityViolation(NumericalError):
    pass


class CensusMismatch(NumericalError):
    """Two counting methods disagree on the same graph"""


# Budgets
class BudgetExceeded(BudgetError):
    pass


class ResourceBudgetExceeded(BudgetError):
    pass


class RejectionBudgetExhausted(BudgetError):
    pass


# Experiments and CLI
class TooFewSamples(InvalidInputError):
    pass


class MissingCounts(InvalidInputError):
    pass


class MissingColumn(InvalidInputError):
    pass


class EmptyInput(InvalidInputError):
    pass


class InvalidConfig(InvalidInputError):
    pass
