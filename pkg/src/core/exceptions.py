"""Exception hierarchy shared by every module of the toolkit."""

from typing import Optional


class ArityGapError(Exception):
    """Base class for all errors raised by the toolkit."""


class ArityGapUndefined(ArityGapError):
    """The arity gap needs at least two essential variables."""


class InessentialVariableError(ArityGapError):
    """An operation requiring full essentiality got an inessential variable."""


class ConstantFunctionError(ArityGapError):
    """The function has no essential variables."""


class ArityMismatchError(ArityGapError):
    """Operands or variable maps disagree on arity."""


class CarrierMismatchError(ArityGapError):
    """Operands are defined over different carriers."""


class IndexRangeError(ArityGapError, ValueError):
    """A variable index or point dimension is out of range."""


class NotBooleanError(ArityGapError):
    """The domain is not {0, 1}."""


class PosetError(ArityGapError):
    """Relation is not a partial order, or a poset file is malformed."""


class NotALattice(ArityGapError):
    """Some pair of elements lacks a meet or a join."""


class NotAChain(ArityGapError):
    """The poset is not totally ordered."""


class NotDistributive(ArityGapError):
    """The lattice violates the distributive law."""


class NotPseudoDirected(ArityGapError):
    """Some pair of elements has neither an upper nor a lower bound."""


class NotBidirected(ArityGapError):
    """The poset is not both upward and downward directed."""


class NotOrderPreserving(ArityGapError):
    """The function is not monotone with respect to the given orders."""


class BoundaryConditionError(ArityGapError):
    """An aggregation function does not send the chain ends to themselves."""


class BudgetExceeded(ArityGapError):
    """A brute-force search would exceed its configured budget."""


class TableFormatError(ArityGapError):
    """Malformed table or poset file; carries the offending line number."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
