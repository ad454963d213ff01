"""Exception hierarchy shared by every module."""


class PLDivError(Exception):
    """Base class for all errors raised by this package."""


class InputError(PLDivError, ValueError):
    """Malformed or non-finite input data."""


class ValidationError(InputError):
    """A precomputed matrix violates the distance-matrix contract."""


class ParseError(InputError):
    """A CSV file could not be parsed; carries line/column information."""

    def __init__(self, message, line=None, column=None):
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if column is not None:
            loc.append(f"column {column}")
        super().__init__(f"{message} ({', '.join(loc)})" if loc else message)
        self.line = line
        self.column = column


class ParameterError(PLDivError, ValueError):
    """An out-of-range parameter (gamma, tau, epsilon, ...)."""


class StructuralError(PLDivError):
    """Graph-structural failure, e.g. a disconnected edge list."""

    def __init__(self, message, n_components=None):
        super().__init__(message)
        self.n_components = n_components


class NumericError(PLDivError, ArithmeticError):
    """Linear-algebra failure or a numerically invalid intermediate."""


class ConvergenceError(NumericError):
    """An iterative search did not reach its stopping criterion."""


class UsageError(PLDivError):
    """Incompatible combination of CLI options."""


class MetricError(PLDivError):
    """Wraps a failure inside one metric so the metric name reaches the user."""

    def __init__(self, metric, cause):
        super().__init__(f"{metric}: {type(cause).__name__}: {cause}")
        self.metric = metric
        self.cause = cause
