"""Exception hierarchy shared by all qumea modules."""


class QumeaError(Exception):
    """Base class for every error raised by this package."""


class SpaceMismatchError(QumeaError, ValueError):
    """Two operands live on different sample spaces."""


class CapacityError(QumeaError):
    """An exhaustive enumeration would exceed a configured guard."""

    def __init__(self, message: str, guard: str, limit: int):
        super().__init__(message)
        self.guard = guard
        self.limit = limit


class AxiomViolationError(QumeaError, ValueError):
    """A decoherence-functional axiom (Hermiticity) fails beyond tolerance."""


class StrongPositivityError(AxiomViolationError):
    """The history matrix has an eigenvalue below the tolerated floor."""

    def __init__(self, message: str, eigenvalue: float):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class PreconditionError(QumeaError, ValueError):
    """An operation was called with inputs outside its domain."""


class ConsistencyError(QumeaError, ArithmeticError):
    """A quantity that must be real picked up an imaginary residue."""


class SchemaError(QumeaError, ValueError):
    """A model document does not match the expected schema."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path
