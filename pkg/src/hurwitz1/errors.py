"""Exception taxonomy shared by all modules."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at (or too close to) a pole."""


class DegeneracyError(DomainError):
    """Degenerate configuration: coincident branch points or a collapsed lattice."""


class PrecisionError(ArithmeticError):
    """A series or iteration failed to reach the requested accuracy."""


class ConditioningError(PrecisionError):
    """A linear-algebra step is too ill-conditioned to trust."""


class PrecisionWarning(RuntimeWarning):
    """Roundoff is suspected to dominate a finite-difference or quadrature result."""
