"""Exception types shared across the package."""


class NetUnfoldError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(NetUnfoldError, ValueError):
    """An argument is outside its admissible range (dimension, probability, ...)."""


class EdgeListParseError(NetUnfoldError, ValueError):
    """A line of an edge-list file could not be parsed."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class EmptyNetworkError(NetUnfoldError, ValueError):
    """An ingested network contains no edges."""


class InsufficientLevelsError(NetUnfoldError, ValueError):
    """Too few eigenvalues remain for the requested operation."""


class DegenerateVarianceError(NetUnfoldError, ValueError):
    """Connection probability 0 or 1 leaves no variance to rescale by."""


class PolynomialFitError(NetUnfoldError, ValueError):
    """Least-squares staircase fit failed (degenerate or rank-deficient input)."""


class MonotonicityError(NetUnfoldError, ValueError):
    """A fitted unfolding map decreases somewhere on the retained range."""


class UnfoldingQualityError(NetUnfoldError, ValueError):
    """Unfolded mean spacing fell outside the accepted gate [0.9, 1.1]."""


class IntervalTooLongError(NetUnfoldError, ValueError):
    """Window length exceeds half the unfolded span."""


class EmptyInputError(NetUnfoldError, ValueError):
    """A pooled statistic received no samples."""


class GridAlignmentError(NetUnfoldError, ValueError):
    """Ensemble members were sampled on different grids."""


class DomainError(NetUnfoldError, ValueError):
    """Function argument outside its mathematical domain."""


class NumericalError(NetUnfoldError, RuntimeError):
    """A numerical routine failed to converge or produced inconsistent output."""


class ConfigError(NetUnfoldError, ValueError):
    """Experiment configuration is invalid or cannot be parsed."""


class PipelineError(NetUnfoldError, RuntimeError):
    """A pipeline stage failed; carries the member index and stage name."""

    def __init__(self, message, member=None, stage=None):
        super().__init__(message)
        self.member = member
        self.stage = stage
