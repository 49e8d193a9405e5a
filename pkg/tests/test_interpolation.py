"""
Tests for interpolation certificates
"""

import numpy as np
import pytest

from rankbound.certify.interpolation import (
    build_matrix,
    homogeneous_monomials,
    monomial_count,
    nonvanishing,
    points_nonvanishing,
)
from rankbound.errors import ShapeError
from rankbound.homotopy.monodromy import StopRule, run
from rankbound.homotopy.tracker import TrackerConfig


def test_monomial_order_and_count():
    assert homogeneous_monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert homogeneous_monomials(3, 2) == [
        (2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    assert len(homogeneous_monomials(4, 5)) == monomial_count(4, 5) == 56
    assert monomial_count(5, 80) == 1929501


def test_build_matrix_shape_and_scaling():
    matrix = build_matrix([[1.0], [2.0], [-3.0 + 1j]], 4)
    assert matrix.shape == (3, 5)
    np.testing.assert_allclose(np.max(np.abs(matrix), axis=1), 1.0)
    with pytest.raises(ShapeError):
        build_matrix([], 2)


def test_flat_points_are_one_coordinate_points():
    flat = build_matrix([1.0, 2.0], 2)
    assert flat.shape == (2, 3)
    np.testing.assert_array_equal(flat, build_matrix([[1.0], [2.0]], 2))
    assert points_nonvanishing([1.0, 2.0, 3.0], 2).full_rank
    with pytest.raises(ShapeError):
        build_matrix(np.ones((2, 2, 2)), 2)


@pytest.mark.parametrize("d", list(range(1, 21)))
def test_vandermonde_suite(d):
    """d distinct points on a line: rank min(d, q + 1) at every degree q."""
    roots = np.exp(2j * np.pi * np.arange(d) / d)
    points = roots.reshape(-1, 1)
    for q in range(1, 25):
        verdict = points_nonvanishing(points, q)
        assert verdict.n_monomials == q + 1
        assert verdict.rank == min(d, q + 1)
        assert verdict.full_rank == (q + 1 <= d)
        assert verdict.insufficient_points == (d < q + 1)


def test_points_in_two_dimensions():
    """Six generic points in the plane meet no conic; five always do."""
    rng = np.random.default_rng(3)
    points = rng.standard_normal((6, 2)) + 1j * rng.standard_normal((6, 2))
    assert points_nonvanishing(points, 2).full_rank
    assert not points_nonvanishing(points[:5], 2).full_rank


def test_points_on_a_line_satisfy_a_linear_form():
    s = np.linspace(-1.0, 1.0, 7)
    points = np.stack([s, 2 * s + 1], axis=1)
    verdict = points_nonvanishing(points, 1)
    assert verdict.rank == 2
    assert not verdict.full_rank


@pytest.mark.slow
def test_strassen_witness_certificates(sigma4_333):
    """The 9 points of σ4(3,3,3) ∩ L certify degree 8 but not degree 9."""
    ws = sigma4_333
    run(ws, TrackerConfig(), StopRule(stall_limit=10))
    assert len(ws) == 9
    assert nonvanishing(ws, 8).full_rank
    at_nine = nonvanishing(ws, 9)
    assert at_nine.rank == 9
    assert at_nine.n_monomials == 10
    assert not at_nine.full_rank
