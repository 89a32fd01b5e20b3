"""Exception hierarchy for stiefel_mvn.

Everything derives from :class:`StiefelMvnError`; most errors also subclass
``ValueError`` so callers can catch them generically.
"""


class StiefelMvnError(Exception):
    """Base class for all errors raised by this package."""


class NotSymmetricError(StiefelMvnError, ValueError):
    """Matrix asymmetry exceeds tolerance."""


class NotPSDError(StiefelMvnError, ValueError):
    """Matrix has an eigenvalue below the negative-semidefinite tolerance."""


class SingularMatrixError(StiefelMvnError, ValueError):
    """Matrix is singular (or numerically too close to singular)."""


class SingularCovarianceError(SingularMatrixError):
    """Sample covariance is degenerate; residuals cannot be whitened."""


class RankDeficientError(StiefelMvnError, ValueError):
    """Matrix does not have full column rank."""


class InvalidSizeError(StiefelMvnError, ValueError):
    """A dimension argument is out of its valid range."""


class InvalidDofError(StiefelMvnError, ValueError):
    """Wishart degrees of freedom below the matrix dimension."""


class DimensionMismatchError(StiefelMvnError, ValueError):
    """Operands have incompatible shapes."""


class ConstantSampleError(StiefelMvnError, ValueError):
    """Univariate sample is constant; normality tests are undefined."""


class SampleSizeError(StiefelMvnError, ValueError):
    """Sample size outside the valid range of the requested test."""


class ConfigError(StiefelMvnError, ValueError):
    """Invalid test or simulation configuration."""


class DatasetError(StiefelMvnError):
    """Problem reading a dataset file."""


class DatasetParseError(DatasetError, ValueError):
    """A cell could not be parsed; carries row/column location in the message."""


class EmptyDatasetError(DatasetError, ValueError):
    """Dataset contains no data rows."""
