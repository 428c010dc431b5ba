"""Exception hierarchy shared by every operator."""


class DfcalcError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(DfcalcError, ValueError):
    """An argument lies outside the domain an operation accepts."""


class PreconditionError(DomainError):
    """A stated hypothesis of an operator or identity is violated."""


class InfiniteValueError(DfcalcError, ArithmeticError):
    """A gamma ratio with a pole in the numerator only (the value is infinite)."""


class NonConvergenceError(DfcalcError, ArithmeticError):
    """A series did not meet its truncation criterion within the term budget."""

    def __init__(self, message, partial=None, last_term=None, terms=None):
        super().__init__(message)
        self.partial = partial
        self.last_term = last_term
        self.terms = terms
