"""
Utilities and infrastructure components
"""

from .metrics import run_metrics

__all__ = [
    "run_metrics",
]
