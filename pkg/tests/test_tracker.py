"""
Tests for Newton refinement and predictor-corrector path tracking
"""

import numpy as np
import pytest

from rankbound.core.segre_system import Solution, complex_gaussian, residual_norm
from rankbound.errors import NoConvergence, ShapeError
from rankbound.homotopy.tracker import (
    TrackerConfig,
    TrackStatus,
    newton_refine,
    random_gamma,
    track,
)
from rankbound.utils.metrics import run_metrics


def _random_target(ws, seed):
    rng = np.random.default_rng(seed)
    shape_A, shape_B = ws.params.A.shape, ws.params.B.shape
    return ws.params.with_slice(complex_gaussian(rng, shape_A), complex_gaussian(rng, shape_B))


def test_config_validation():
    TrackerConfig()
    with pytest.raises(ValueError):
        TrackerConfig(min_step=0.2)
    with pytest.raises(ValueError):
        TrackerConfig(step_contract=1.5)
    with pytest.raises(ValueError):
        TrackerConfig(max_newton_iters=0)
    with pytest.raises(ValueError):
        TrackerConfig(contraction_factor=1.0)


def test_random_gamma_on_the_right_half_circle():
    rng = np.random.default_rng(0)
    s = np.linspace(0.0, 1.0, 201)
    for _ in range(1000):
        gamma = random_gamma(rng)
        assert abs(gamma) == pytest.approx(1.0)
        assert gamma.real >= 0.0
        tau = gamma * s / (1 + (gamma - 1) * s)
        assert np.max(np.abs(tau)) <= np.sqrt(2) + 1e-12


def test_newton_refine_polishes_perturbed_seed(sigma4_333):
    ws = sigma4_333
    rng = np.random.default_rng(2)
    seed = ws.solutions[0]
    noisy = Solution(u=seed.u + 1e-6 * complex_gaussian(rng, seed.u.shape[0]),
                     t=seed.t + 1e-6 * complex_gaussian(rng, 1))
    polished = newton_refine(ws.profile, ws.params, noisy)
    assert polished.residual_norm <= 1e-10
    assert np.linalg.norm(polished.x - seed.x) <= 1e-6
    assert run_metrics.polishes == 1


def test_newton_refine_gives_up(sigma4_333):
    ws = sigma4_333
    seed = ws.solutions[0]
    noisy = Solution(u=seed.u + 1e-3, t=seed.t)
    with pytest.raises(NoConvergence):
        newton_refine(ws.profile, ws.params, noisy, max_iters=0)


def test_tracking_to_the_same_parameters_stays_put(sigma4_333):
    ws = sigma4_333
    outcome = track(ws.profile, ws.solutions[0], ws.params, ws.params, TrackerConfig(), 1.0)
    assert outcome.success
    np.testing.assert_allclose(outcome.solution.x, ws.solutions[0].x, atol=1e-12)


def test_successful_paths_end_on_the_target(segre_222):
    """Every Success endpoint satisfies the target system to the corrector tolerance."""
    ws = segre_222
    cfg = TrackerConfig()
    rng = np.random.default_rng(9)
    for k in range(5):
        target = _random_target(ws, 100 + k)
        outcome = track(ws.profile, ws.solutions[0], ws.params, target, cfg, random_gamma(rng))
        assert outcome.status in set(TrackStatus)
        if outcome.success:
            assert residual_norm(ws.profile, target, outcome.solution) <= cfg.corrector_tol
            assert outcome.steps_used >= 1
        else:
            assert outcome.solution is None
    assert run_metrics.paths_tracked == 5


def test_only_the_image_slice_may_move(segre_222):
    ws = segre_222
    moved = ws.params.__class__(A=ws.params.A, B=ws.params.B, H=ws.params.H,
                                u0=ws.params.u0 + 1.0)
    with pytest.raises(ShapeError):
        track(ws.profile, ws.solutions[0], ws.params, moved, TrackerConfig(), 1.0)


def test_halving_the_initial_step_reaches_the_same_endpoint(segre_222):
    ws = segre_222
    coarse, fine = TrackerConfig(), TrackerConfig(initial_step=0.05)
    rng = np.random.default_rng(4)
    compared = 0
    for k in range(6):
        target = _random_target(ws, 200 + k)
        gamma = random_gamma(rng)
        first = track(ws.profile, ws.solutions[0], ws.params, target, coarse, gamma)
        second = track(ws.profile, ws.solutions[0], ws.params, target, fine, gamma)
        if first.success and second.success:
            assert np.linalg.norm(first.solution.x - second.solution.x) <= 1e-8
            compared += 1
    assert compared >= 3
