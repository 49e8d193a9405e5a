"""
Degree Run Coordinator for rankbound
Seeds or resumes a witness set, expands it by monodromy with checkpoints,
and turns the result into a bound.
"""

import logging
from pathlib import Path
from typing import Dict, Optional

from ..certify.bounds import bound_from_witness
from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import RankBoundError, WitnessFileError
from ..homotopy.monodromy import StopRule, WitnessSet, new_witness_set, run, trace_test
from ..homotopy.tracker import TrackerConfig
from ..utils.persistence import load_witness, save_witness
from .formats import Format
from .segre_system import generic_border_rank, secant_dimension, seed_witness

logger = logging.getLogger(__name__)


class DegreeRunCoordinator:
    """Coordinates one degree lower-bound computation for σ_r of a format"""

    def __init__(self, fmt: Format, rng_seed: int = 0, tracker: Optional[TrackerConfig] = None,
                 checkpoint: Optional[Path] = None, workers: Optional[int] = None,
                 tolerances: Tolerances = DEFAULT_TOLERANCES):
        self.fmt = fmt
        self.rng_seed = rng_seed
        self.tracker = tracker or TrackerConfig()
        self.checkpoint = Path(checkpoint) if checkpoint else None
        self.workers = workers
        self.tolerances = tolerances
        logger.info(f"Initialized degree run for {fmt.label()} (seed {rng_seed}, "
                    f"checkpoint {'disabled' if self.checkpoint is None else self.checkpoint})")

    def prepare(self, resume: bool = False) -> WitnessSet:
        """Load the checkpoint when resuming, else seed a fresh witness set."""
        if resume:
            if self.checkpoint is None or not self.checkpoint.exists():
                raise WitnessFileError(f"Nothing to resume: checkpoint {self.checkpoint} not found")
            ws = load_witness(self.checkpoint, self.tolerances.validation_tol)
            if ws.profile.format != self.fmt:
                raise WitnessFileError(
                    f"Checkpoint holds {ws.profile.format.label()}, not {self.fmt.label()}")
            if ws.meta.stall_counter:
                logger.info(f"Resetting stall counter ({ws.meta.stall_counter}) on resume")
                ws.meta.stall_counter = 0
            logger.info(f"📂 Resuming from {len(ws)} points after {ws.meta.loops_run} loops")
            return ws

        profile = secant_dimension(self.fmt, self.rng_seed, self.tolerances.rank_tol)
        logger.info(f"📐 {self.fmt.label()}: dim {profile.dim}, codim {profile.codim}, "
                    f"fiber dim {profile.fiber_dim}")
        params, seed = seed_witness(profile, self.rng_seed)
        return new_witness_set(profile, params, seed, self.rng_seed)

    def _checkpoint(self, ws: WitnessSet) -> None:
        if self.checkpoint is not None:
            save_witness(ws, self.checkpoint)

    def run_degree_workflow(self, stop: StopRule, resume: bool = False,
                            run_trace: bool = False) -> Dict:
        """Run the complete seed → monodromy → bound workflow"""
        logger.info("=" * 60)
        logger.info(f"STARTING DEGREE RUN FOR {self.fmt.label()}")
        logger.info("=" * 60)

        # Phase 1: seed or resume
        ws = self.prepare(resume)
        self._checkpoint(ws)

        # Phase 2: monodromy
        logger.info("\n🔁 PHASE 2: MONODROMY")
        run(ws, self.tracker, stop, workers=self.workers,
            dedupe_tol=self.tolerances.dedupe_tol, on_loop=self._checkpoint)
        logger.info(f"🛤️ {ws.meta.paths_failed} of {ws.meta.loop_paths} loop paths failed "
                    f"({ws.meta.failure_rate:.1%})")

        results: Dict = {
            "format": self.fmt.to_dict(),
            "profile": ws.profile.to_dict(),
            "degree_lower_bound": len(ws),
            "stop_reason": ws.meta.stop_reason.value,
            "loops_run": ws.meta.loops_run,
            "loop_paths": ws.meta.loop_paths,
            "paths_failed": ws.meta.paths_failed,
            "path_failure_rate": ws.meta.failure_rate,
            "rng_seed": ws.meta.rng_seed,
            "checkpoint": str(self.checkpoint) if self.checkpoint else None,
        }

        # Phase 3: completeness check
        if run_trace and ws.profile.codim == 1:
            logger.info("\n🧪 PHASE 3: TRACE TEST")
            try:
                report = trace_test(ws, self.tracker)
                results["trace_test"] = {"passed": report.passed,
                                         "trace_residual": report.trace_residual}
            except RankBoundError as e:
                logger.warning(f"❌ Trace test failed to run: {e}")
                results["trace_test"] = {"passed": False, "error": str(e)}

        # Phase 4: bound (codimension 1 needs no interpolation)
        if ws.profile.codim == 1 and len(ws) >= 2:
            gbr = generic_border_rank(self.fmt.a, self.fmt.b, self.fmt.c, self.rng_seed,
                                      self.tolerances.rank_tol)
            results["bound"] = bound_from_witness(ws, target=gbr).to_dict()

        logger.info("=" * 60)
        logger.info("DEGREE RUN COMPLETE")
        logger.info("=" * 60)
        results["witness"] = ws
        return results
