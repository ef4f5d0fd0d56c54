"""Exception types shared across the library."""


class AperyError(Exception):
    """Base class for all library-specific errors."""


class DomainError(AperyError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DivergenceError(AperyError, ValueError):
    """A series was requested outside its region of convergence."""


class PrecisionError(AperyError, ArithmeticError):
    """A tolerance cannot be met at the requested working precision."""
