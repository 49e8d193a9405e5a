"""
Monodromy expansion of pseudowitness sets.

Known solutions are transported around triangles in the space of image slices
(two random intermediate (A, B) vertices, same fiber slices). Endpoints that
land on new image points are merged into the witness set. The number of
distinct image points is a lower bound for deg σ_r.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..config import DEFAULT_TOLERANCES, worker_count
from ..core.segre_system import SecantProfile, SliceParams, Solution, complex_gaussian
from ..errors import ShapeError, TrackFailure
from ..utils.metrics import run_metrics
from .tracker import TrackerConfig, random_gamma, track

logger = logging.getLogger(__name__)

LOOP_LEGS = 3
TRACE_STEP = 1e-2
TRACE_RATIO = 1e-4
TRACE_ATTEMPTS = 3


class StopReason(str, Enum):
    NOT_STOPPED = "NotStopped"
    TARGET_REACHED = "TargetReached"
    STALL = "Stall"
    MAX_LOOPS = "MaxLoops"
    SEED_TRACK_FAILURE = "SeedTrackFailure"


@dataclass
class WitnessMeta:
    """Bookkeeping carried with a witness set and persisted with it"""
    rng_seed: int = 0
    loops_run: int = 0
    loop_paths: int = 0
    paths_failed: int = 0
    stall_counter: int = 0
    target_count: Optional[int] = None
    stop_reason: StopReason = StopReason.NOT_STOPPED
    fiber_collisions: int = 0

    @property
    def failure_rate(self) -> float:
        """Share of solutions that failed to come back from their loop."""
        return self.paths_failed / self.loop_paths if self.loop_paths else 0.0


@dataclass
class WitnessSet:
    """Distinct solutions of one slicing system, keyed by their image points"""
    profile: SecantProfile
    params: SliceParams
    solutions: List[Solution] = field(default_factory=list)
    meta: WitnessMeta = field(default_factory=WitnessMeta)

    def __len__(self) -> int:
        return len(self.solutions)

    def t_points(self) -> np.ndarray:
        """t-coordinates of all solutions as an n × ℓ array."""
        if not self.solutions:
            return np.zeros((0, self.profile.codim), dtype=np.complex128)
        return np.vstack([sol.t for sol in self.solutions])

    def image_points(self) -> np.ndarray:
        """Image points A t + B as an n × abc array."""
        return self.t_points() @ self.params.A.T + self.params.B


@dataclass(frozen=True)
class StopRule:
    stall_limit: int = 10
    max_loops: int = 200
    target_count: Optional[int] = None


@dataclass
class LoopReport:
    new_points: int
    failures: int
    # Endpoint of every start solution, in order; None where the path failed
    endpoints: List[Optional[Solution]] = field(default_factory=list, repr=False)


@dataclass
class TraceReport:
    passed: bool
    trace_residual: float
    first_difference: float
    n_points: int


def _same_image(t1: np.ndarray, t2: np.ndarray, tol: float) -> bool:
    return np.linalg.norm(t1 - t2) <= tol * (1.0 + np.linalg.norm(t1))


def _merge(kept: List[Solution], candidates: Sequence[Solution], tol: float) -> Tuple[int, int]:
    """Append candidates with unseen images to kept; returns (added, fiber collisions)."""
    added = collisions = 0
    for candidate in candidates:
        duplicate = next((sol for sol in kept if _same_image(sol.t, candidate.t, tol)), None)
        if duplicate is None:
            kept.append(candidate)
            added += 1
        elif not _same_image(duplicate.u, candidate.u, tol):
            collisions += 1
    return added, collisions


def dedupe(solutions: Sequence[Solution], tol: float = DEFAULT_TOLERANCES.dedupe_tol) -> List[Solution]:
    """Keep the first solution of every image point.

    Two solutions are duplicates iff ‖t₁ − t₂‖ ≤ tol·(1 + ‖t₁‖); with A of full
    column rank, t determines the image point A t + B.
    """
    kept: List[Solution] = []
    _, collisions = _merge(kept, solutions, tol)
    if collisions:
        logger.warning(f"⚠️ {collisions} solutions share an image point but not a fiber point")
    return kept


def new_witness_set(profile: SecantProfile, params: SliceParams, seed: Solution,
                    rng_seed: int, target_count: Optional[int] = None) -> WitnessSet:
    return WitnessSet(profile=profile, params=params, solutions=[seed],
                      meta=WitnessMeta(rng_seed=rng_seed, target_count=target_count))


def _random_vertex(ws: WitnessSet, rng: np.random.Generator) -> SliceParams:
    fmt = ws.profile.format
    return ws.params.with_slice(complex_gaussian(rng, (fmt.ambient_dim, ws.profile.codim)),
                                complex_gaussian(rng, fmt.ambient_dim))


def _track_loop(ws: WitnessSet, sol: Solution, vertices: Sequence[SliceParams],
                gammas: Sequence[complex], cfg: TrackerConfig) -> Optional[Solution]:
    current = sol
    for start, end, gamma in zip(vertices[:-1], vertices[1:], gammas):
        outcome = track(ws.profile, current, start, end, cfg, gamma)
        if not outcome.success:
            return None
        current = outcome.solution
    return current


def loop_once(ws: WitnessSet, cfg: TrackerConfig, rng: np.random.Generator,
              workers: int = 1, dedupe_tol: float = DEFAULT_TOLERANCES.dedupe_tol) -> LoopReport:
    """Transport every known solution around one random triangle and merge the endpoints."""
    if not ws.solutions:
        raise ShapeError("Cannot run monodromy on an empty witness set")

    vertices = [ws.params, _random_vertex(ws, rng), _random_vertex(ws, rng), ws.params]
    # One gamma per leg and path, all drawn before dispatch
    gammas = [[random_gamma(rng) for _ in range(LOOP_LEGS)] for _ in ws.solutions]
    starts = list(ws.solutions)

    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            endpoints = list(executor.map(
                lambda pair: _track_loop(ws, pair[0], vertices, pair[1], cfg),
                zip(starts, gammas)))
    else:
        endpoints = [_track_loop(ws, sol, vertices, g, cfg) for sol, g in zip(starts, gammas)]

    arrived = [sol for sol in endpoints if sol is not None]
    failures = len(endpoints) - len(arrived)
    added, collisions = _merge(ws.solutions, arrived, dedupe_tol)

    meta = ws.meta
    meta.loops_run += 1
    meta.loop_paths += len(starts)
    meta.paths_failed += failures
    meta.fiber_collisions += collisions
    meta.stall_counter = 0 if added else meta.stall_counter + 1
    run_metrics.record_loop(meta.loops_run, added, failures, len(ws))
    if failures:
        logger.info(f"Loop {meta.loops_run}: {failures} of {len(starts)} paths failed")
    return LoopReport(new_points=added, failures=failures, endpoints=endpoints)


def loop_rng(ws: WitnessSet) -> np.random.Generator:
    """Generator for the next loop, derived from (rng_seed, loops_run) so resumed runs replay."""
    return np.random.default_rng([ws.meta.rng_seed, ws.meta.loops_run])


def run(ws: WitnessSet, cfg: TrackerConfig, stop: StopRule = StopRule(),
        workers: Optional[int] = None, dedupe_tol: float = DEFAULT_TOLERANCES.dedupe_tol,
        on_loop: Optional[Callable[[WitnessSet], None]] = None) -> WitnessSet:
    """Iterate loop_once until the target, a stall, or the loop budget stops it.

    Args:
        ws: Seeded witness set, expanded in place
        cfg: Tracker settings
        stop: Stopping rule
        workers: Path-tracking threads (default from RANKBOUND_THREADS)
        dedupe_tol: Image-point dedupe tolerance
        on_loop: Called after every loop (checkpointing)

    Returns:
        The same witness set, with meta.stop_reason set
    """
    workers = worker_count(workers)
    meta = ws.meta
    if stop.target_count is not None:
        meta.target_count = stop.target_count
    loops_this_run = 0
    seed_failures = 0

    logger.info(f"🔁 Monodromy on {ws.profile.format.label()} from {len(ws)} point(s), "
                f"{workers} worker(s)")
    while True:
        if meta.target_count is not None and len(ws) >= meta.target_count:
            meta.stop_reason = StopReason.TARGET_REACHED
            break
        if meta.stall_counter >= stop.stall_limit:
            if len(ws) == 1 and seed_failures >= stop.stall_limit:
                meta.stop_reason = StopReason.SEED_TRACK_FAILURE
                logger.warning(f"❌ The seed of {ws.profile.format.label()} failed to track "
                               f"{seed_failures} loops in a row")
            else:
                meta.stop_reason = StopReason.STALL
            break
        if loops_this_run >= stop.max_loops:
            meta.stop_reason = StopReason.MAX_LOOPS
            break

        report = loop_once(ws, cfg, loop_rng(ws), workers, dedupe_tol)
        loops_this_run += 1
        logger.info(f"🔁 Loop {meta.loops_run}: +{report.new_points} → {len(ws)} points")
        if on_loop is not None:
            on_loop(ws)
        seed_failures = seed_failures + 1 if len(ws) == 1 and report.failures == 1 else 0

    logger.info(f"✅ Monodromy stopped ({meta.stop_reason.value}) with {len(ws)} points")
    return ws


def trace_test(ws: WitnessSet, cfg: TrackerConfig, step: float = TRACE_STEP,
               ratio: float = TRACE_RATIO) -> TraceReport:
    """Linear-trace completeness check for codimension-1 slices.

    B is translated by s·d for s ∈ {0, step, 2·step}; the summed image points
    (relative to the slice origin) move affine-linearly in s iff the witness
    set is complete, so the second difference must vanish. Each path gets
    TRACE_ATTEMPTS gammas before the test raises TrackFailure.
    """
    if ws.profile.codim != 1:
        raise ShapeError(f"The trace test needs codimension 1, got {ws.profile.codim}")
    if not ws.solutions:
        raise ShapeError("Cannot run the trace test on an empty witness set")

    rng = np.random.default_rng([ws.meta.rng_seed, ws.meta.loops_run, 7])
    direction = complex_gaussian(rng, ws.profile.format.ambient_dim)

    traces = [ws.t_points().sum(axis=0)]
    for k in (1, 2):
        moved = ws.params.with_slice(ws.params.A, ws.params.B + k * step * direction)
        moved_t = []
        for index, sol in enumerate(ws.solutions):
            for _ in range(TRACE_ATTEMPTS):
                outcome = track(ws.profile, sol, ws.params, moved, cfg, random_gamma(rng))
                if outcome.success:
                    break
            else:
                raise TrackFailure(f"Trace test path {index} failed {TRACE_ATTEMPTS} times: "
                                   f"{outcome.status.value}")
            moved_t.append(outcome.solution.t)
        traces.append(np.sum(moved_t, axis=0))

    A = ws.params.A
    first = float(np.linalg.norm(A @ (traces[1] - traces[0])))
    second = float(np.linalg.norm(A @ (traces[2] - 2 * traces[1] + traces[0])))
    passed = second <= ratio * first
    logger.info(f"🧪 Trace test on {len(ws)} points: second difference {second:.2e}, "
                f"first {first:.2e} → {'passed' if passed else 'failed'}")
    return TraceReport(passed=passed, trace_residual=second, first_difference=first,
                       n_points=len(ws))
