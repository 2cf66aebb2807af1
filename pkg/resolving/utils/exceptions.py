"""Exceptions shared by all apps."""


class ResolvingError(Exception):
    """Base class for errors raised by this project."""


class DomainError(ResolvingError, ValueError):
    """Raised when an input violates a documented precondition."""


class NumericFailure(ResolvingError):
    """Raised when a linear program cannot be solved reliably."""


class ConfigError(ResolvingError):
    """Raised for unreadable or invalid configuration and instance files."""

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        if line is not None:
            message = "line {}: {}".format(line, message)
        elif field is not None:
            message = "{}: {}".format(field, message)
        super().__init__(message)
