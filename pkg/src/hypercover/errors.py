"""Exception hierarchy shared by all modules."""


class HypercoverError(Exception):
    """Base class for every error raised by this package."""


class InputError(HypercoverError, ValueError):
    """Invalid input: bad dimensions, malformed records, violated preconditions."""


class DimensionError(InputError):
    pass


class CoefficientBoxError(InputError):
    """A normal vector has an entry outside ``[-C, C]``."""

    def __init__(self, message, plane=None, index=None):
        super().__init__(message)
        self.plane = plane
        self.index = index


class NotSlicingError(InputError):
    """A family fails to slice some cube edge."""

    def __init__(self, message, edge=None):
        super().__init__(message)
        self.edge = edge


class NondegeneracyError(InputError):
    """A family fails the nondegeneracy condition; carries the violation."""

    def __init__(self, message, violation=None):
        super().__init__(message)
        self.violation = violation


class BudgetError(InputError):
    """An enumeration would exceed its size ceiling."""


class InfeasibleError(HypercoverError):
    """No sub-collection of the candidates covers the universe."""

    def __init__(self, message, element=None):
        super().__init__(message)
        self.element = element


class InternalConsistencyError(HypercoverError, AssertionError):
    """A check that is mathematically guaranteed on valid input has failed.

    Raised by the witness pipeline and the search post-conditions. Seeing
    this means there is a bug somewhere in the package.
    """
