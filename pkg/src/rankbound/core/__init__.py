"""
Formats, linear algebra kernels and the secant slicing system
"""

from .formats import Format, SystemShape, expected_generic_rank, is_concise, system_shape
from .segre_system import (
    SecantProfile,
    SliceParams,
    Solution,
    generic_border_rank,
    secant_dimension,
    seed_witness,
)

__all__ = [
    "Format",
    "SystemShape",
    "expected_generic_rank",
    "is_concise",
    "system_shape",
    "SecantProfile",
    "SliceParams",
    "Solution",
    "generic_border_rank",
    "secant_dimension",
    "seed_witness",
]
