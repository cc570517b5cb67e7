class ExprError(ValueError):
    """Base class for invalid expression input or operations."""


class UnknownVariableError(ExprError):
    pass


class ChartMismatchError(ExprError):
    pass


class EvaluationError(ExprError):
    """Raised when a rational function is evaluated on its pole set."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class ParseError(ExprError):
    """Malformed expression text; ``position`` is a 0-based column."""

    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at column {position + 1}: {text!r}")
        self.text = text
        self.position = position
