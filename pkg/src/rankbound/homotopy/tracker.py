"""
Predictor-corrector path tracking along segment homotopies in (A, B)-space.

The parameter path is params(s) = params_from·(1 − τ(s)) + params_to·τ(s) with
τ(s) = γs / (1 + (γ − 1)s) for a unit-modulus γ (the gamma trick). Only the
image slice (A, B) moves; fiber slices are shared by both endpoints.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ..core.numerics import linear_solve
from ..core.segre_system import SecantProfile, SliceParams, Solution, evaluate, jacobian
from ..errors import NoConvergence, ShapeError, SingularSystem
from ..utils.metrics import run_metrics

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrackerConfig:
    """Step-size and corrector settings for one path"""
    initial_step: float = 0.1
    min_step: float = 1e-7
    max_steps: int = 10000
    corrector_tol: float = 1e-10
    max_newton_iters: int = 5
    step_expand: float = 2.0
    step_contract: float = 0.5
    expand_after: int = 3
    divergence_norm: float = 1e8
    # Largest first Newton correction accepted, relative to 1 + ‖x‖
    max_corrector_jump: float = 0.25
    # Later Newton corrections must shrink by at least this factor
    contraction_factor: float = 0.9

    def __post_init__(self):
        if not 0 < self.min_step < self.initial_step <= 1:
            raise ValueError(
                f"Need 0 < min_step < initial_step <= 1, got {self.min_step}, {self.initial_step}"
            )
        if self.corrector_tol <= 0 or self.max_corrector_jump <= 0:
            raise ValueError("Tolerances must be positive")
        if self.max_steps < 1 or self.max_newton_iters < 1:
            raise ValueError("max_steps and max_newton_iters must be positive")
        if not 0 < self.step_contract < 1 < self.step_expand:
            raise ValueError("Need 0 < step_contract < 1 < step_expand")
        if not 0 < self.contraction_factor < 1:
            raise ValueError(f"Need 0 < contraction_factor < 1, got {self.contraction_factor}")


class TrackStatus(str, Enum):
    SUCCESS = "Success"
    STEP_SIZE_COLLAPSE = "StepSizeCollapse"
    MAX_STEPS_EXCEEDED = "MaxStepsExceeded"
    DIVERGED = "Diverged"
    ENDPOINT_REJECTED = "EndpointRejected"


@dataclass
class TrackOutcome:
    """Result of tracking one path"""
    status: TrackStatus
    solution: Optional[Solution]
    steps_used: int
    gamma: complex
    message: str = ""

    @property
    def success(self) -> bool:
        return self.status is TrackStatus.SUCCESS


def random_gamma(rng: np.random.Generator) -> complex:
    """A random unit-modulus γ with |arg γ| ≤ π/2, so that |τ(s)| ≤ √2 on [0, 1]."""
    return complex(np.exp(1j * rng.uniform(-np.pi / 2, np.pi / 2)))


def newton_refine(profile: SecantProfile, params: SliceParams, sol: Solution,
                  tol: float = 1e-10, max_iters: int = 5) -> Solution:
    """Plain Newton on the square system until ‖F‖ ≤ tol.

    Raises:
        NoConvergence: residual above tol after max_iters, or the iterate blew up
        SingularSystem: from the inner linear solve
    """
    n_u = profile.format.n_u
    x = sol.x.copy()
    iterations = 0
    while True:
        u, t = x[:n_u], x[n_u:]
        residual = evaluate(profile, params, u, t)
        norm = float(np.linalg.norm(residual))
        if norm <= tol:
            run_metrics.record_polish()
            return Solution.from_x(x, n_u, norm)
        if iterations == max_iters:
            raise NoConvergence(
                f"Newton residual {norm:.2e} above {tol:.1e} after {max_iters} iterations")
        x = x + linear_solve(jacobian(profile, params, u, t), -residual)
        iterations += 1
        if np.linalg.norm(x) > 1e8:
            raise NoConvergence(f"Newton iterate diverged (‖x‖ = {np.linalg.norm(x):.2e})")


class _SegmentHomotopy:
    """F(x, s) for params moving from `start` to `target` along the gamma path."""

    def __init__(self, profile: SecantProfile, start: SliceParams, target: SliceParams,
                 gamma: complex):
        self.profile = profile
        self.start = start
        self.gamma = gamma
        self.n_u = profile.format.n_u
        self.dA = target.A - start.A
        self.dB = target.B - start.B

    def tau(self, s: float) -> complex:
        return self.gamma * s / (1 + (self.gamma - 1) * s)

    def dtau(self, s: float) -> complex:
        return self.gamma / (1 + (self.gamma - 1) * s) ** 2

    def params_at(self, s: float) -> SliceParams:
        tau = self.tau(s)
        return self.start.with_slice(self.start.A + tau * self.dA, self.start.B + tau * self.dB)

    def velocity(self, x: np.ndarray, s: float) -> np.ndarray:
        """dx/ds from the Davidenko equation J dx/ds = −∂F/∂s."""
        u, t = x[:self.n_u], x[self.n_u:]
        params = self.params_at(s)
        rhs = np.zeros(x.shape[0], dtype=np.complex128)
        rhs[:self.dB.shape[0]] = (self.dA @ t + self.dB) * self.dtau(s)
        return linear_solve(jacobian(self.profile, params, u, t), rhs)

    def predict(self, x: np.ndarray, s: float, h: float) -> np.ndarray:
        """Classical fourth-order Runge-Kutta step."""
        k1 = self.velocity(x, s)
        k2 = self.velocity(x + 0.5 * h * k1, s + 0.5 * h)
        k3 = self.velocity(x + 0.5 * h * k2, s + 0.5 * h)
        k4 = self.velocity(x + h * k3, s + h)
        return x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)

    def correct(self, x: np.ndarray, s: float, cfg: TrackerConfig) -> Optional[np.ndarray]:
        """Newton at fixed s; None when the corrector does not contract."""
        params = self.params_at(s)
        previous_step = None
        for iteration in range(cfg.max_newton_iters):
            u, t = x[:self.n_u], x[self.n_u:]
            residual = evaluate(self.profile, params, u, t)
            if np.linalg.norm(residual) <= cfg.corrector_tol:
                return x
            step = linear_solve(jacobian(self.profile, params, u, t), -residual)
            step_norm = np.linalg.norm(step)
            scale = 1.0 + np.linalg.norm(x)
            if iteration == 0 and step_norm > cfg.max_corrector_jump * scale:
                return None
            if previous_step is not None and step_norm > cfg.contraction_factor * previous_step:
                return None
            x = x + step
            if step_norm <= cfg.corrector_tol * scale:
                return x
            previous_step = step_norm
        return None


def track(profile: SecantProfile, sol: Solution, params_from: SliceParams,
          params_to: SliceParams, cfg: TrackerConfig, gamma: complex) -> TrackOutcome:
    """Track sol from params_from to params_to.

    Args:
        profile: Secant profile of the system
        sol: Solution valid at params_from
        params_from: Start parameters
        params_to: Target parameters (same H and u0)
        cfg: Step-size settings
        gamma: Unit-modulus constant of the gamma trick

    Returns:
        TrackOutcome; on Success the solution satisfies ‖F‖ ≤ corrector_tol at params_to
    """
    if not params_from.same_fiber_slices(params_to):
        raise ShapeError("Only the image slice (A, B) may move along a path")

    homotopy = _SegmentHomotopy(profile, params_from, params_to, gamma)
    x = sol.x.astype(np.complex128)
    s = 0.0
    h = cfg.initial_step
    steps = 0
    accepted_streak = 0

    def outcome(status: TrackStatus, message: str, solution: Optional[Solution] = None):
        run_metrics.record_path(status.value)
        if status is not TrackStatus.SUCCESS:
            logger.debug(f"Path {status.value} at s={s:.6f} after {steps} steps: {message}")
        return TrackOutcome(status=status, solution=solution, steps_used=steps,
                            gamma=gamma, message=message)

    while s < 1.0:
        if steps >= cfg.max_steps:
            return outcome(TrackStatus.MAX_STEPS_EXCEEDED, f"{cfg.max_steps} steps used")
        steps += 1
        h = min(h, 1.0 - s)
        s_next = 1.0 if h >= 1.0 - s else s + h

        try:
            corrected = homotopy.correct(homotopy.predict(x, s, h), s_next, cfg)
        except SingularSystem:
            corrected = None

        if corrected is None:
            accepted_streak = 0
            h *= cfg.step_contract
            if h < cfg.min_step:
                return outcome(TrackStatus.STEP_SIZE_COLLAPSE, f"step {h:.2e} below min_step")
            continue

        x, s = corrected, s_next
        if np.linalg.norm(x) > cfg.divergence_norm:
            return outcome(TrackStatus.DIVERGED, f"‖(u,t)‖ = {np.linalg.norm(x):.2e}")
        accepted_streak += 1
        if accepted_streak >= cfg.expand_after:
            h = min(1.0, h * cfg.step_expand)
            accepted_streak = 0

    try:
        endpoint = newton_refine(profile, params_to, Solution.from_x(x, profile.format.n_u),
                                 cfg.corrector_tol, cfg.max_newton_iters)
    except (NoConvergence, SingularSystem) as e:
        return outcome(TrackStatus.ENDPOINT_REJECTED, str(e))
    return outcome(TrackStatus.SUCCESS, "", endpoint)
