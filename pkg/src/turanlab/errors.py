"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain where a representation is valid."""


class PoleError(DomainError):
    """Argument at (or numerically indistinguishable from) a pole."""


class RegimeError(DomainError):
    """Parameters outside the regime in which an inequality is claimed."""


class DimensionError(ValueError):
    """Requested integration dimension is not supported."""


class EvaluationError(ArithmeticError):
    """An integrand or series produced a non-finite value."""


class ConvergenceError(ArithmeticError):
    """A series or iteration exhausted its budget without converging."""


class CancellationWarning(RuntimeWarning):
    """Two large terms nearly cancel; the result has lost relative accuracy."""


class ConditioningWarning(RuntimeWarning):
    """A linear-algebra step is badly conditioned."""
