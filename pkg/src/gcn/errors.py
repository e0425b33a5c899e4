"""Exception hierarchy shared by all modules."""


class GCNError(Exception):
    """Base class for every error raised by this package."""


class NotAPrimePower(GCNError, ValueError):
    pass


class FieldMismatch(GCNError, ValueError):
    pass


class DivisionByZero(GCNError, ZeroDivisionError):
    pass


class AmbientMismatch(GCNError, ValueError):
    pass


class Inconsistent(GCNError, ArithmeticError):
    """A linear system has no solution."""


class ParamViolation(GCNError, ValueError):
    """Input parameters violate an operation's preconditions."""


class TooManySubsets(GCNError):
    pass


class RankConditionUnmet(GCNError):
    pass


class InvalidDistance(ParamViolation):
    pass


class NotEnoughCodewords(GCNError):
    pass


class Exhausted(GCNError):
    """The randomized search ran out of attempts (not a proof of unsolvability)."""

    def __init__(self, message: str, attempts: int):
        super().__init__(message)
        self.attempts = attempts


class TooLarge(GCNError):
    pass


class InternalConsistencyError(GCNError, AssertionError):
    """A result contradicts an identity that must hold for valid inputs."""
