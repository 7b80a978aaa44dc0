"""Exception hierarchy shared by all modules."""


class TablePeaksError(Exception):
    """Base class for domain errors (CLI exit code 2)."""

    kind = "domain-error"


class InputFormatError(TablePeaksError, ValueError):
    kind = "input-format"


class ConfigurationError(TablePeaksError, ValueError):
    kind = "configuration"


class EmptySignalError(TablePeaksError, ValueError):
    """Raised when a signal has zero mass and cannot be normalized.

    ``iteration`` is set when the error surfaces inside the threshold-convolution
    loop, so callers can tell which pass over-thresholded.
    """

    kind = "empty-signal"

    def __init__(self, message="no structural transitions in mask", iteration=None):
        super().__init__(message)
        self.iteration = iteration


class EmptyInputError(TablePeaksError, ValueError):
    kind = "empty-input"


class UndefinedMetricError(TablePeaksError, ValueError):
    kind = "undefined-metric"
