"""
Tests for the composition-basis expansion of Kronecker powers
"""

from math import comb

import numpy as np
import pytest

from rankbound.certify.kronecker_lab import (
    CompositionIndex,
    basis_vector,
    coefficient,
    compositions,
    kronecker_power,
    span_dimension,
    verify_decomposition,
)
from rankbound.core.segre_system import complex_gaussian
from rankbound.errors import SizeGuardError


def test_composition_index():
    g = CompositionIndex.from_cells(8, [3, 0, 3])
    assert g.counts == ((0, 1), (3, 2))
    assert g.q == 3
    assert g.cells() == (0, 3, 3)
    assert g.arrangement_count() == 3
    with pytest.raises(ValueError):
        CompositionIndex.from_cells(4, [4])


def test_composition_count_is_stars_and_bars():
    assert sum(1 for _ in compositions(8, 3)) == comb(10, 3)
    assert sum(1 for _ in compositions(27, 2)) == comb(28, 2)


def test_basis_vectors_have_one_entry_per_arrangement():
    g = CompositionIndex.from_cells(4, [1, 1, 2, 3])
    row = basis_vector(g)
    assert row.shape == (1, 4 ** 4)
    assert row.nnz == g.arrangement_count() == 12
    np.testing.assert_array_equal(row.data, np.ones(12))


def test_coefficient():
    T = np.array([2.0, 3.0, 5.0])
    g = CompositionIndex.from_cells(3, [0, 2, 2])
    assert coefficient(T, g) == 2.0 * 25.0


@pytest.mark.parametrize("sides, q, trials", [
    ((2, 2, 2), 2, 40),
    ((2, 2, 3), 2, 30),
    ((2, 2, 2), 3, 20),
    ((2, 3, 3), 2, 10),
])
def test_decomposition_residual(sides, q, trials):
    """T^{⊗q} = Σ_g T^g T^(g) up to 1e-12·‖T‖^q."""
    rng = np.random.default_rng(sum(sides) * 10 + q)
    n_cells = int(np.prod(sides))
    for _ in range(trials):
        T = complex_gaussian(rng, n_cells)
        residual = verify_decomposition(T, q)
        assert residual <= 1e-12 * np.linalg.norm(T) ** q


def test_kronecker_power_matches_outer_products():
    rng = np.random.default_rng(0)
    T = complex_gaussian(rng, 4)
    np.testing.assert_allclose(kronecker_power(T, 2), np.outer(T, T).reshape(-1))


def test_span_of_symmetric_squares():
    rng = np.random.default_rng(1)
    assert span_dimension(2, 2, 2, 2, 41, rng) == 36


def test_size_guard():
    T = np.ones(27)
    with pytest.raises(SizeGuardError):
        kronecker_power(T, 5)
    with pytest.raises(ValueError):
        span_dimension(2, 2, 2, 2, 10, np.random.default_rng(0))
