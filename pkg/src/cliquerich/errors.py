"""Exception hierarchy shared by every cliquerich module."""


class CliqueRichError(ValueError):
    """Base class for data errors raised by the library."""


class GraphFormatError(CliqueRichError):
    """Malformed or invalid graph input (edge list or dense matrix)."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UndefinedDensityError(CliqueRichError):
    pass


class CensusError(CliqueRichError):
    pass


class OracleTooLargeError(CensusError):
    pass


class TableMismatchError(CliqueRichError):
    pass


class PipelineError(CliqueRichError):
    pass


class GeneratorError(CliqueRichError):
    pass


class RankError(CliqueRichError):
    pass


class RecipeError(CliqueRichError):
    pass
