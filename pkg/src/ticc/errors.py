"""Exception classes. Each class carries the CLI exit code for its error class."""


class TiccError(Exception):
    exit_code = 1


class InvalidParameters(TiccError, ValueError):
    exit_code = 2


class SpecParseError(TiccError, ValueError):
    exit_code = 3

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ResourceLimit(TiccError):
    exit_code = 4


class BudgetExceeded(TiccError):
    exit_code = 5


class InconsistentBoundary(TiccError):
    exit_code = 6


class InsufficientPoints(TiccError, ValueError):
    exit_code = 7


class NotBracketed(TiccError, ValueError):
    exit_code = 8


class InvalidId(TiccError, IndexError):
    exit_code = 9
