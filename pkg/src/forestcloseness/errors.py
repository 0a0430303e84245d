"""Exception types raised across the package."""


class ForestClosenessError(Exception):
    """Base class for all package errors."""


class GraphFormatError(ForestClosenessError, ValueError):
    """Malformed edge-list input. Carries the 1-based line number."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ParameterError(ForestClosenessError, ValueError):
    """An argument is outside its documented range."""


class OracleSizeError(ForestClosenessError, ValueError):
    """Dense reference computation requested on a graph above the size guard."""


class SolverError(ForestClosenessError, RuntimeError):
    """Iterative solve did not reach the requested residual."""

    def __init__(self, message, residual, iterations):
        self.residual = residual
        self.iterations = iterations
        super().__init__(f"{message} (residual {residual:.3e} after {iterations} iterations)")
