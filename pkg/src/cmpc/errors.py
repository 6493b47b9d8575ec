"""Exception types shared across the package."""


class CmpcError(Exception):
    """Base class for all package errors."""


class DegeneratePoints(CmpcError):
    """Interpolation received duplicate abscissae."""


class InsufficientEvaluations(CmpcError):
    """Fewer evaluation points than the degree bound requires."""


class SingularVandermonde(CmpcError):
    """Generalized Vandermonde system is singular; caller should redraw points."""


class IndivisibleDimension(CmpcError):
    """Matrix dimension not divisible by the requested partition count."""


class ShapeMismatch(CmpcError):
    """Block grid or matrix shapes are inconsistent."""


class UnsupportedPartition(CmpcError):
    """Partition choice excluded by the scheme (PolyDot rejects s=t=1)."""


class InternalBranchError(CmpcError):
    """No construction branch matched; indicates a formula transcription bug."""


class OutOfRange(CmpcError):
    """Parameter outside its admissible range."""


class AuditIncomplete(CmpcError):
    """Transcript lacks the records needed for a cost audit."""


class TooLargeForExhaustive(CmpcError):
    """Configuration too large for exhaustive enumeration."""


class UsageError(CmpcError):
    """Bad command-line usage; maps to exit code 2."""
