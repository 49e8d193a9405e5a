"""
Tests for the asymptotic bound arithmetic
"""

import math

import numpy as np
import pytest

from rankbound.certify.bounds import (
    asymptotic_bound,
    bound_from_witness,
    log_binomial,
    minimal_q,
)
from rankbound.certify.interpolation import InterpolationVerdict
from rankbound.core.formats import Format
from rankbound.core.segre_system import SecantProfile, Solution
from rankbound.errors import MissingCertificate, NoImprovement
from rankbound.homotopy.monodromy import WitnessSet


@pytest.mark.parametrize("r, q, published", [
    (8, 104, 8.366128),
    (17, 1228, 17.098769),
    (17, 3600, 17.038715),
    (18, 186999, 18.001169),
    (19, 3637, 19.042882),
])
def test_codim_one_bounds(r, q, published):
    """Bounds from the published codimension-1 degrees, q = degree − 1."""
    value = asymptotic_bound(r, 2, q)
    assert value < published
    assert published - value <= 1e-5


@pytest.mark.parametrize("r, codim, expected", [
    (9, 2, 76), (10, 2, 87), (11, 2, 98), (13, 2, 121), (14, 2, 132), (18, 2, 180),
    (19, 2, 192), (7, 3, 88), (9, 3, 120), (11, 3, 154), (12, 3, 171), (13, 3, 189),
    (14, 3, 207), (15, 3, 225), (17, 3, 262), (19, 3, 299),
])
def test_minimal_q(r, codim, expected):
    """Smallest degree beating the generic border rank r + 1."""
    q = minimal_q(r, codim + 1, r + 1)
    assert q == expected
    assert asymptotic_bound(r, codim + 1, q) < r + 1 <= asymptotic_bound(r, codim + 1, q - 1)


def test_family_bound_does_not_improve():
    # 4·9^(1/8) ≈ 5.264 against generic border rank 5
    assert asymptotic_bound(4, 2, 8) == pytest.approx(5.264296, abs=1e-6)
    assert asymptotic_bound(4, 2, 8) > 5


def test_log_binomial():
    assert log_binomial(10, 3) == pytest.approx(math.log(120))
    assert log_binomial(10, 0) == 0.0
    assert log_binomial(10, 10) == 0.0
    assert log_binomial(2 * 10 ** 7, 10 ** 7) == pytest.approx(
        math.lgamma(2 * 10 ** 7 + 1) - 2 * math.lgamma(10 ** 7 + 1), rel=1e-12)
    with pytest.raises(ValueError):
        log_binomial(3, 5)


def test_bound_decreases_towards_r():
    values = [asymptotic_bound(5, 3, q) for q in (1, 10, 100, 1000, 10000)]
    assert values == sorted(values, reverse=True)
    assert values[-1] > 5


def test_minimal_q_rejects_unreachable_targets():
    with pytest.raises(NoImprovement):
        minimal_q(9, 3, 9)
    assert minimal_q(9, 3, 100) == 1


def _codim_one_witness(n_points):
    fmt = Format(3, 3, 3, 4)
    profile = SecantProfile(format=fmt, dim=26)
    sols = [Solution(u=np.zeros(fmt.n_u, dtype=np.complex128),
                     t=np.array([k], dtype=np.complex128)) for k in range(n_points)]
    return WitnessSet(profile=profile, params=None, solutions=sols)


def test_bound_from_codim_one_witness():
    result = bound_from_witness(_codim_one_witness(9), target=5)
    assert (result.r, result.dim_L, result.q) == (4, 2, 8)
    assert result.improving is False
    assert result.provenance["n_points"] == 9
    assert result.to_dict()["value"] == pytest.approx(5.264296, abs=1e-6)


def test_higher_codim_bound_needs_a_certificate():
    fmt = Format(4, 4, 8, 9)
    ws = WitnessSet(profile=SecantProfile(format=fmt, dim=126), params=None, solutions=[])
    with pytest.raises(MissingCertificate):
        bound_from_witness(ws)
    deficient = InterpolationVerdict(q=76, n_monomials=3003, n_points=3000, rank=3000,
                                     full_rank=False, smallest_kept_sv_ratio=1e-3)
    with pytest.raises(MissingCertificate):
        bound_from_witness(ws, deficient)

    verdict = InterpolationVerdict(q=76, n_monomials=3003, n_points=3500, rank=3003,
                                   full_rank=True, smallest_kept_sv_ratio=1e-3)
    result = bound_from_witness(ws, verdict, target=10)
    assert result.dim_L == 3
    assert result.improving is True
    assert result.provenance["certificate"] == "interpolation"
