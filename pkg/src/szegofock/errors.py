"""Exception types shared across the package."""


class SzegofockError(Exception):
    """Base class for computational errors raised by this package."""


class DomainError(SzegofockError):
    """An argument lies outside the mathematical domain of the operation."""


class UnsupportedWeight(SzegofockError):
    """The requested operation is not defined for this weight family."""


class ConvergenceError(SzegofockError):
    """An iterative scheme exhausted its budget before reaching tolerance."""


class TruncationError(SzegofockError):
    """No decaying truncation window was found within the doubling budget."""


class SingularPoint(SzegofockError):
    """Evaluation requested at a genuine singularity of a kernel."""


class NearSingular(SzegofockError):
    """Parameters too close to a singular configuration for stable quadrature."""
