"""Exception types raised across the package."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class PreconditionError(ValueError):
    """An operation was called outside its supported parameter range."""


class ResourceLimitError(PreconditionError):
    """The requested object would exceed a desk-scale size cap."""


class LoopDirectionError(PreconditionError):
    """Curvature requested along a zero column (a loop, so d(x, y) = 0)."""


class DegenerateCodeError(PreconditionError):
    """Every column of the generator matrix is zero."""


class IncompleteDistanceError(ValueError):
    """A distance oracle could not resolve a pair the transport problem needs."""
