"""
Certificates and bound arithmetic
"""

from .bounds import BoundResult, asymptotic_bound, bound_from_witness, log_binomial, minimal_q
from .interpolation import InterpolationVerdict, homogeneous_monomials, nonvanishing

__all__ = [
    "BoundResult",
    "asymptotic_bound",
    "bound_from_witness",
    "log_binomial",
    "minimal_q",
    "InterpolationVerdict",
    "homogeneous_monomials",
    "nonvanishing",
]
