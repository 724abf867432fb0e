"""Exception types shared across the package."""


class QuotmodError(Exception):
    """Base class for all library errors."""


class InvalidOperandError(QuotmodError):
    """Operands disagree in dimension, degree cap, or index range."""


class InvalidKernelError(QuotmodError):
    """A series violates the structural requirements of a kernel.

    Carries ``witness``: for a non-Hermitian coefficient matrix this is the
    most negative eigenvalue of its Hermitian part, for a non-nnd matrix the
    most negative eigenvalue itself.
    """

    def __init__(self, message: str, witness: float | None = None):
        super().__init__(message)
        self.witness = witness


class SingularKernelError(QuotmodError):
    """Kernel vanishes where an operation needs it nonzero (e.g. log at 0)."""


class NotInvertibleError(QuotmodError):
    """Series inversion requested for a series with zero constant term."""


class GaugeSingularError(QuotmodError):
    """Gauge factor vanishes at the base point."""


class DegenerateKernelError(QuotmodError):
    """Kernel value at the base point is zero or not positive."""


class IncomparableError(QuotmodError):
    """Two module specifications cannot be compared (mismatched data)."""


class RankDeficiencyError(QuotmodError):
    """Truncated coefficient matrix is numerically singular."""


class SignatureError(QuotmodError):
    """Transversal curvature is not negative, outside the supported regime."""


class EvaluationRadiusError(QuotmodError):
    """Evaluation point lies outside the certified truncation radius."""


class TrustedDegreeError(QuotmodError):
    """Operation would consume more derivative budget than the series carries."""


#: Errors caused by malformed or inconsistent user input.
INPUT_ERRORS = (
    InvalidOperandError,
    InvalidKernelError,
    IncomparableError,
    NotInvertibleError,
    GaugeSingularError,
)

#: Errors raised when the numerics leave the certified regime.
NUMERICAL_ERRORS = (
    SingularKernelError,
    DegenerateKernelError,
    RankDeficiencyError,
    SignatureError,
    EvaluationRadiusError,
    TrustedDegreeError,
)
