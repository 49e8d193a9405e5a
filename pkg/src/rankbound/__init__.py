"""
rankbound - Asymptotic rank bounds for tensor formats

Samples linear slices of secant varieties of Segre varieties by monodromy,
certifies non-vanishing of low-degree polynomials by interpolation and
evaluates the resulting asymptotic rank bound.
"""

# Single-source versioning - version comes from pyproject.toml
try:
    from importlib.metadata import version
    __version__ = version("rankbound")
except Exception:
    # Package not installed or in development mode
    __version__ = "0.1.0"

from .errors import RankBoundError
from .core import Format, SecantProfile, SliceParams, Solution
from .homotopy import TrackerConfig, WitnessSet
from .certify import BoundResult, InterpolationVerdict

__all__ = [
    "RankBoundError",
    "Format",
    "SecantProfile",
    "SliceParams",
    "Solution",
    "TrackerConfig",
    "WitnessSet",
    "BoundResult",
    "InterpolationVerdict",
]
