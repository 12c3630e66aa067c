"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Matrix shape or tuple arity does not match what the operation needs."""


class SingularMatrixError(ArithmeticError):
    """Linear system has no unique solution."""


class DegeneracyError(ValueError):
    """Input violates a required general-position assumption.

    ``witness`` carries the offending index tuple when one is known.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class SizeCapError(ValueError):
    """Instance exceeds a configured size cap."""


class TowerOverflowError(OverflowError):
    """Iterated-exponential value would exceed the configured bit budget."""


class ConstructionError(RuntimeError):
    """Extremal-set generation failed to produce a verified set."""
