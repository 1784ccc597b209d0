"""Exception types raised by edgewave."""


class EdgewaveError(Exception):
    """Base class for all edgewave errors."""


class GraphError(EdgewaveError, ValueError):
    """Invalid graph construction (self-loop, duplicate edge, bad index)."""


class DataFormatError(EdgewaveError, ValueError):
    """A CSV file could not be parsed into the expected shape."""


class ConfigError(EdgewaveError, ValueError):
    """An experiment or estimator configuration is invalid."""


class StabilityError(EdgewaveError, RuntimeError):
    """The step size and filter violate the LMS stability bound."""

    def __init__(self, margin, message=None):
        self.margin = float(margin)
        if message is None:
            message = (
                f"unstable configuration: ||alpha M U S U^T||_2^2 = {self.margin:.6g} > 1"
            )
        super().__init__(message)
