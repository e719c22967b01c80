"""Exception hierarchy shared by all modules."""


class EigengapError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(EigengapError, ValueError):
    """Invalid domain parameters or call arguments."""


class BudgetError(EigengapError):
    """Enumeration could not certify the requested number of eigenvalues."""


class NumericError(EigengapError, ArithmeticError):
    """A numerical routine failed (non-convergence, overflow, underflow)."""


class InsufficientEigenvalues(ParameterError):
    """A check needs more certified eigenvalues than the spectrum carries."""
