"""
Exceptions raised by rankbound.

Everything derives from RankBoundError so the CLI can tell computational
failures (exit 1) apart from usage errors (exit 2).
"""

from typing import Optional


class RankBoundError(Exception):
    """Base class for rankbound failures."""
    pass


class InvalidFormat(RankBoundError, ValueError):
    """A tensor format or secant index is not usable."""
    pass


class ShapeError(RankBoundError, ValueError):
    """Array shapes do not match the format or profile."""
    pass


class SystemShapeError(RankBoundError):
    """The slicing system cannot be squared for this codimension."""
    pass


class SingularSystem(RankBoundError):
    """A linear solve hit a numerically singular matrix."""

    def __init__(self, message: str, condition: float = float("inf")):
        super().__init__(message)
        self.condition = condition


class NoConvergence(RankBoundError):
    """Newton's method did not reach the requested residual."""
    pass


class DisagreementError(RankBoundError):
    """Independent random samples disagreed on a generic rank."""

    def __init__(self, message: str, ranks: tuple = ()):
        super().__init__(message)
        self.ranks = ranks


class TrackFailure(RankBoundError):
    """A path failed to track where every path is required to succeed."""
    pass


class NoImprovement(RankBoundError):
    """The target cannot be beaten by any degree."""
    pass


class MissingCertificate(RankBoundError):
    """A bound needs a full-rank interpolation verdict that was not supplied."""
    pass


class SizeGuardError(RankBoundError):
    """A verification computation exceeds the desk-scale size guard."""
    pass


class WitnessFileError(RankBoundError):
    """A witness file could not be read, parsed or validated."""

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index
