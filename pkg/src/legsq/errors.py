"""Exception hierarchy."""


class LegsqError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(LegsqError, ValueError):
    """Invalid arguments supplied by the caller."""


class DomainError(LegsqError, ValueError):
    """Argument outside the domain of a function (sqrt/log of a nonpositive value)."""


class RadicandMismatchError(LegsqError, ValueError):
    """Arithmetic between quadratic surds with different radicands."""


class SeriesError(LegsqError, ValueError):
    """A power-series operation was called outside its precondition."""


class NonInvertibleError(SeriesError, ZeroDivisionError):
    """Division by a series (or polynomial) with zero constant term."""


class CompositionError(SeriesError):
    """Inner series of a composition has a nonzero constant term."""


class SqrtBranchError(SeriesError):
    """Square root requested for a series whose constant term is not 1."""


class HypergeometricParameterError(LegsqError, ValueError):
    """A lower hypergeometric parameter is a nonpositive integer."""


class NonConvergenceError(LegsqError, ArithmeticError):
    """A numeric series failed its convergence monitoring."""


class RootBracketError(LegsqError, ArithmeticError):
    """A bisection bracket does not enclose a sign change."""
