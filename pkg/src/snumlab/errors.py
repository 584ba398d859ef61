"""Exception hierarchy shared by all modules."""


class SnumError(Exception):
    """Base class for toolkit errors."""


class InputError(SnumError, ValueError):
    """Malformed or inconsistent input (shapes, exponents, parameters)."""


class DegenerateInputError(InputError):
    """Input is well-formed but degenerate (zero vector, dependent basis)."""


class CapabilityError(SnumError):
    """The requested computation has no supported path for these inputs."""


class NumericalFailure(SnumError, RuntimeError):
    """An iterative kernel did not converge within its iteration cap."""


class CertifiedViolation(SnumError):
    """A certified lower bound exceeds a certified upper bound it must not exceed.

    ``details`` lists the offending comparisons as dicts with the two numbers.
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = list(details or [])
