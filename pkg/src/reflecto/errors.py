class ReflectoError(Exception):
    """Base class for all library errors."""


class SpecError(ReflectoError, ValueError):
    """Unknown or malformed sequence description."""


class BudgetError(ReflectoError, ValueError):
    """Prefix budget too small for the requested range, or over the cap."""


class ParseError(ReflectoError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class CorruptionError(ReflectoError, RuntimeError):
    """Internal count identities violated; the factor data cannot be trusted."""


class GraphStructureError(CorruptionError):
    pass
