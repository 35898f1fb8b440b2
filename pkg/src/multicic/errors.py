"""Exception hierarchy shared by every module."""


class CICError(Exception):
    """Base class for all package errors."""


class EmptyCell(CICError):
    def __init__(self, period, level, message=None):
        self.period = period
        self.level = level
        super().__init__(message or f"cell (period={period}, level={level!r}) is empty")


class InvalidValue(CICError, ValueError):
    pass


class InvalidProbability(CICError, ValueError):
    pass


class SchemaError(CICError):
    pass


class ParseError(CICError):
    def __init__(self, message, row=None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class UnknownCell(CICError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown cell"


class UnknownLevel(CICError):
    pass


class SelfCounterfactual(CICError):
    pass


class NotIdentified(CICError):
    """Requested parameter is outside the identified set for the chosen mode."""


class OrderingRequired(CICError):
    pass


class NoLowerLevel(CICError):
    pass


class ConfigError(CICError):
    def __init__(self, message, key=None):
        self.key = key
        if key is not None:
            message = f"{key}: {message}"
        super().__init__(message)
