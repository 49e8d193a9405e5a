"""
Shared fixtures: small seeded slicing systems and a clean metrics collector
"""

import pytest

from rankbound.core.formats import Format
from rankbound.core.segre_system import secant_dimension, seed_witness
from rankbound.homotopy.monodromy import new_witness_set
from rankbound.utils.metrics import run_metrics


@pytest.fixture(autouse=True)
def clean_metrics():
    run_metrics.reset()
    yield
    run_metrics.reset()


@pytest.fixture
def segre_222():
    """σ1(2,2,2): the Segre threefold P1×P1×P1 in P7, degree 6, codimension 4."""
    profile = secant_dimension(Format(2, 2, 2, 1), rng_seed=3)
    params, seed = seed_witness(profile, rng_seed=3)
    return new_witness_set(profile, params, seed, rng_seed=3)


@pytest.fixture
def sigma4_333():
    """σ4(3,3,3): the codimension-1 Strassen hypersurface, degree 9."""
    profile = secant_dimension(Format(3, 3, 3, 4), rng_seed=1)
    params, seed = seed_witness(profile, rng_seed=1)
    return new_witness_set(profile, params, seed, rng_seed=1)
