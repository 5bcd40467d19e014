"""Exception hierarchy.

Every error carries the CLI exit code it maps to, so the front end never has
to special-case library exceptions.
"""


class RghwError(Exception):
    exit_code = 1


class PreconditionViolated(RghwError, ValueError):
    """An argument violates a documented precondition."""

    exit_code = 3


class NotPrimePower(PreconditionViolated):
    pass


class FieldMismatch(PreconditionViolated):
    pass


class DivisionByZero(PreconditionViolated, ZeroDivisionError):
    pass


class WidthMismatch(PreconditionViolated):
    pass


class LengthMismatch(PreconditionViolated):
    pass


class InvalidT(PreconditionViolated):
    pass


class InvalidDims(PreconditionViolated):
    pass


class InvalidParams(PreconditionViolated):
    pass


class DomainError(PreconditionViolated):
    pass


class DegeneratePair(PreconditionViolated):
    pass


class NoSolution(RghwError):
    """The linear system has no solution."""

    exit_code = 3


class NonIntegralQuotient(RghwError, ArithmeticError):
    """A subspace-count division left a remainder (arguments out of range)."""

    exit_code = 3


class BudgetExceeded(RghwError):
    """Exhaustive enumeration would exceed the configured budget."""

    exit_code = 4


class Ambiguous(RghwError):
    """Several secrets are consistent with the observed shares."""


class Inconsistent(RghwError):
    """No codeword matches the observed shares."""


class InvariantViolation(RghwError, AssertionError):
    """A proven invariant failed at runtime; indicates a bug."""
