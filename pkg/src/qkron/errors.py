"""Exception hierarchy shared by all qkron modules.

Every error class carries a distinct process exit code so the CLI can map
failures one-to-one onto exit statuses.
"""


class QkronError(Exception):
    """Base class for all qkron errors."""

    exit_code = 1


class InvalidParameter(QkronError):
    """An argument is outside the documented domain of an operation."""

    exit_code = 2


class NotSupported(QkronError):
    """The operation is well-posed only outside the requested arguments."""

    exit_code = 3


class NonIntegralEvaluation(QkronError):
    """Evaluation at a point whose square root is not rational while
    half-integer exponents are present."""

    exit_code = 4


class NotAPowerSeriesInQr(QkronError):
    """An exponent is not a nonnegative multiple of the requested power."""

    exit_code = 5


class DivisionFailed(QkronError):
    """Exact left division has no solution in the torus algebra."""

    exit_code = 6


class IndexOutOfRange(QkronError):
    """A vertex or edge index lies outside the path."""

    exit_code = 7


class AmbiguousGreenLabel(QkronError):
    """Two distinct green labels with different admissibility windows match
    the same first slope violation."""

    exit_code = 8


class ExhaustivenessViolation(QkronError):
    """No weight-table row applies to an edge; the case table has a gap."""

    exit_code = 9


class BudgetExceeded(QkronError):
    """A configured enumeration or size cap was exceeded."""

    exit_code = 10


class ExtractionFailed(QkronError):
    """A torus term does not have the shape required to read off a
    Grassmannian polynomial."""

    exit_code = 11


class ConstructionFailed(QkronError):
    """No certified rigid module was found within the attempt budget."""

    exit_code = 12
