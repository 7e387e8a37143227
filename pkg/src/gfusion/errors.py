"""Exception types shared across the toolkit."""


class GFusionError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(GFusionError):
    pass


class NotHermitian(GFusionError):
    pass


class NotPSD(GFusionError):
    pass


class RangeNotContained(GFusionError):
    """Factorization residual exceeds tolerance: the range of the left
    operator is not contained in the range of the right one."""


class ZeroDenominator(GFusionError):
    """Denominator operator of a generalized Rayleigh quotient is numerically zero."""


class NotInvertible(GFusionError):
    pass


class NotPositive(GFusionError):
    """A required positive (semi)definiteness condition failed; carries the
    offending index when it is per-item."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ItemCountMismatch(GFusionError):
    pass


class WeightMismatch(GFusionError):
    pass


class CodomainMismatch(GFusionError):
    pass


class NotAFrame(GFusionError):
    pass


class NotBessel(GFusionError):
    pass


class ResolutionFailed(GFusionError):
    pass


class HypothesisFailed(GFusionError):
    """A theorem hypothesis (commutation, perturbation, orthogonality)
    failed its residual check; carries the hypothesis name."""

    def __init__(self, message, name=None):
        super().__init__(message)
        self.name = name


class InvalidParameters(GFusionError):
    pass


class ParseError(GFusionError):
    pass
