"""
Path tracking and monodromy
"""

from .tracker import TrackerConfig, TrackOutcome, TrackStatus, newton_refine, track
from .monodromy import StopReason, StopRule, WitnessMeta, WitnessSet, dedupe, trace_test

__all__ = [
    "TrackerConfig",
    "TrackOutcome",
    "TrackStatus",
    "newton_refine",
    "track",
    "StopReason",
    "StopRule",
    "WitnessMeta",
    "WitnessSet",
    "dedupe",
    "trace_test",
]
