"""Exception types shared across the toolkit.

Parameter errors (bad dimensions, invalid options) raise plain ValueError;
the classes here mark conditions a caller may want to handle separately,
in particular the CLI's exit-code mapping: ConfigError -> 2, DataError and
subclasses -> 3, ConvergenceError -> 4.
"""


class DataError(ValueError):
    """Input data is unusable: bad files, empty datasets, unknown labels."""


class FormatError(DataError):
    """An image file is not one of the supported formats."""


class DatasetError(DataError):
    """A dataset directory or manifest cannot produce any records."""


class SplitError(DataError):
    """A split spec is infeasible for some subject."""


class RecordError(DataError):
    """A stored run record cannot be parsed or has an unknown layout."""


class DegenerateInputError(ValueError):
    """Vectors that make a metric or heuristic undefined (zero, constant)."""


class ConfigError(ValueError):
    """An experiment config is malformed or internally inconsistent."""


class ReportError(ValueError):
    """A report grid is empty or missing a required cell."""


class ConvergenceError(RuntimeError):
    """SVM training failed to satisfy the KKT conditions in time.

    Attributes:
        worst_residual: largest KKT residual at the moment of giving up.
    """

    def __init__(self, message: str, worst_residual: float = float("nan")):
        super().__init__(message)
        self.worst_residual = worst_residual
