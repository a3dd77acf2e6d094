"""Shared exception types for the exact-geometry pipeline."""


class DimensionMismatch(ValueError):
    """Operands have incompatible dimensions; the message carries both shapes."""


class SpectrumError(ValueError):
    """Diagonal spectrum fails regularity (repeated entry) or tracelessness."""


class EmptyLocus(Exception):
    """Requested sampling locus has no points for these parameters."""


class NotInOrbit(Exception):
    """The pairing of the two coordinate vectors vanishes, so the point lies
    on the incidence divisor instead of the open orbit."""


class NotNilpotent(ValueError):
    """Matrix expected to be nilpotent is not; the message names the witness power."""


class NotUnipotent(ValueError):
    """Matrix expected to be unipotent is not."""


class HypothesisViolated(ValueError):
    """Nilpotency index exceeds the requested filtration center."""


class ChartBoundary(Exception):
    """Chart denominator vanishes at the requested point."""


class Unsatisfiable(Exception):
    """Exact sequence admits no nonnegative rank assignment."""

    def __init__(self, message, slot=None):
        super().__init__(message)
        self.slot = slot


class DegenerateCriticalPoint(ValueError):
    """Twist-local counting needs nondegenerate critical points."""


class InternalCheckFailed(RuntimeError):
    """An identity that must hold by construction failed; indicates a bug."""
