"""Exception hierarchy for the regionstab toolkit.

Three marker bases group every concrete error by failure class, which is
also how the CLI maps exceptions to exit codes: validation failures exit 1,
numeric failures exit 2, I/O failures exit 3.
"""


class RegionStabError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(RegionStabError):
    """Bad input data, shapes, ranges, or configuration."""


class NumericError(RegionStabError):
    """A numeric procedure failed (e.g. an iteration did not converge)."""


class InputOutputError(RegionStabError):
    """A required file is missing, unreadable, or unwritable."""


# --- core numerics ---------------------------------------------------------

class NonFiniteError(ValidationError):
    def __init__(self, row, column):
        self.row = row
        self.column = column
        super().__init__(f"non-finite value at row {row}, column {column!r}")


class ZeroVarianceError(ValidationError):
    def __init__(self, column):
        self.column = column
        super().__init__(f"column {column!r} has zero sample variance")


class DimensionMismatchError(ValidationError):
    pass


class LengthMismatchError(ValidationError):
    pass


class NotSymmetricError(ValidationError):
    pass


class NoConvergenceError(NumericError):
    pass


# --- pca -------------------------------------------------------------------

class AllZeroError(ValidationError):
    pass


class NegativeEigenvalueError(ValidationError):
    pass


class ThresholdUnreachableError(ValidationError):
    pass


# --- network ---------------------------------------------------------------

class EmptyDatasetError(ValidationError):
    pass


class LabelOutOfRangeError(ValidationError):
    pass


# --- stability index -------------------------------------------------------

class NonPositiveOutputError(ValidationError):
    pass


class DegenerateRangeError(ValidationError):
    pass


class OutOfRangeError(ValidationError):
    pass


# --- forecasting -----------------------------------------------------------

class TooFewPointsError(ValidationError):
    pass


class DegenerateYearsError(ValidationError):
    pass


# --- ingestion and pipeline ------------------------------------------------

class MissingColumnError(ValidationError):
    def __init__(self, column):
        self.column = column
        super().__init__(f"required column {column!r} is missing")


class ParseError(ValidationError):
    def __init__(self, row, column, detail=""):
        self.row = row
        self.column = column
        msg = f"cannot parse row {row}, column {column!r}"
        super().__init__(msg + (f": {detail}" if detail else ""))


class RangeViolationError(ValidationError):
    def __init__(self, row, column, detail=""):
        self.row = row
        self.column = column
        msg = f"value out of range at row {row}, column {column!r}"
        super().__init__(msg + (f": {detail}" if detail else ""))


class DuplicateKeyError(ValidationError):
    def __init__(self, country, year):
        self.country = country
        self.year = year
        super().__init__(f"duplicate record for ({country!r}, {year})")


class TooFewRecordsError(ValidationError):
    pass


class ModelMissingError(InputOutputError):
    pass


class InsufficientHistoryError(ValidationError):
    pass
