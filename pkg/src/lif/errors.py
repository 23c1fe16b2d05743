class LIFError(Exception):
    """Base class for domain errors raised by this package."""


class LIFSyntaxError(LIFError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


class VocabularyError(LIFError):
    pass


class ArityError(LIFError):
    pass


class UnknownModuleError(LIFError):
    pass


class UniverseError(LIFError):
    """A variable (or variable set) lies outside the declared universe."""


class MismatchError(LIFError):
    """Two BRVs do not share the same universe and domain."""


class PreconditionError(LIFError):
    pass


class FreshVariableError(LIFError):
    pass
