"""
Tests for the dense linear algebra kernels
"""

import numpy as np
import pytest

from rankbound.core.numerics import (
    as_complex_matrix,
    condition_number,
    linear_solve,
    numeric_rank,
)
from rankbound.errors import ShapeError, SingularSystem


def _random_matrix(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def test_linear_solve_matches_numpy():
    rng = np.random.default_rng(0)
    M = _random_matrix(rng, 12) + 5 * np.eye(12)
    v = rng.standard_normal(12) + 1j * rng.standard_normal(12)
    x = linear_solve(M, v)
    np.testing.assert_allclose(x, np.linalg.solve(M, v), rtol=1e-10, atol=1e-12)
    assert np.linalg.norm(M @ x - v) <= 1e-10 * (1 + np.linalg.norm(v))


def test_linear_solve_rejects_singular_matrices():
    with pytest.raises(SingularSystem):
        linear_solve(np.array([[1.0, 2.0], [2.0, 4.0]]), np.array([1.0, 1.0]))
    with pytest.raises(SingularSystem):
        linear_solve(np.zeros((3, 3)), np.ones(3))


def test_linear_solve_condition_limit():
    M = np.diag([1.0, 1e-9])
    linear_solve(M, np.ones(2))
    with pytest.raises(SingularSystem) as excinfo:
        linear_solve(M, np.ones(2), condition_limit=1e6)
    assert excinfo.value.condition > 1e6


def test_linear_solve_shape_checks():
    with pytest.raises(ShapeError):
        linear_solve(np.ones((2, 3)), np.ones(2))
    with pytest.raises(ShapeError):
        linear_solve(np.eye(3), np.ones(2))


def test_numeric_rank():
    rng = np.random.default_rng(1)
    left = rng.standard_normal((10, 4)) + 1j * rng.standard_normal((10, 4))
    right = rng.standard_normal((4, 8)) + 1j * rng.standard_normal((4, 8))
    report = numeric_rank(left @ right)
    assert report.rank == 4
    assert 0 < report.smallest_kept_ratio <= 1
    assert numeric_rank(np.zeros((3, 3))).rank == 0
    assert numeric_rank(np.zeros((0, 5))).rank == 0


def test_numeric_rank_tolerance():
    M = np.diag([1.0, 1e-6, 1e-12])
    assert numeric_rank(M, 1e-8).rank == 2
    assert numeric_rank(M, 1e-4).rank == 1
    with pytest.raises(ValueError):
        numeric_rank(M, 0.0)


def test_condition_number():
    assert condition_number(np.diag([2.0, 0.5])) == pytest.approx(4.0)
    assert condition_number(np.diag([1.0, 0.0])) == float("inf")


def test_matrix_validation():
    with pytest.raises(ShapeError):
        as_complex_matrix(np.ones(3))
    with pytest.raises(ShapeError):
        as_complex_matrix([[1.0, np.nan]])
    with pytest.raises(ShapeError):
        as_complex_matrix(np.ones((2, 2)), rows=3)


def test_linear_solve_residual_on_random_instances():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        n = int(rng.integers(1, 21))
        M = _random_matrix(rng, n)
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        x = linear_solve(M, v)
        assert np.linalg.norm(M @ x - v) <= 1e-10 * (1 + np.linalg.norm(v))


def test_numeric_rank_ignores_permutations_and_scaling():
    rng = np.random.default_rng(8)
    left = rng.standard_normal((9, 3)) + 1j * rng.standard_normal((9, 3))
    right = rng.standard_normal((3, 7)) + 1j * rng.standard_normal((3, 7))
    M = left @ right
    for _ in range(20):
        permuted = M[rng.permutation(9)][:, rng.permutation(7)]
        scale = complex(rng.uniform(1e-3, 1e3) * np.exp(2j * np.pi * rng.random()))
        assert numeric_rank(permuted).rank == 3
        assert numeric_rank(scale * permuted).rank == 3
