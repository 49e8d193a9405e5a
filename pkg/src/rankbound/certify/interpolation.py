"""
Interpolation certificates on L ∩ σ_r.

A degree-q form on the slice span vanishes on the sampled points iff some
combination of the columns of the homogeneous-monomial evaluation matrix does;
full column rank certifies that no such form exists.
"""

import logging
from dataclasses import dataclass
from math import comb
from typing import List, Sequence, Tuple

import numpy as np

from ..config import DEFAULT_TOLERANCES
from ..core.numerics import numeric_rank
from ..errors import ShapeError

logger = logging.getLogger(__name__)


@dataclass
class InterpolationVerdict:
    """Rank report of one interpolation matrix"""
    q: int
    n_monomials: int
    n_points: int
    rank: int
    full_rank: bool
    smallest_kept_sv_ratio: float
    insufficient_points: bool = False

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "n_monomials": self.n_monomials,
            "n_points": self.n_points,
            "rank": self.rank,
            "full_rank": self.full_rank,
            "smallest_kept_sv_ratio": self.smallest_kept_sv_ratio,
            "insufficient_points": self.insufficient_points,
        }


def homogeneous_monomials(n_vars: int, q: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of all degree-q monomials in n_vars variables.

    Graded lexicographic order: (q,0,…,0) first, (0,…,0,q) last.
    """
    if n_vars < 1 or q < 0:
        raise ValueError(f"Need n_vars >= 1 and q >= 0, got {n_vars}, {q}")
    if n_vars == 1:
        return [(q,)]
    monomials = []
    for lead in range(q, -1, -1):
        for rest in homogeneous_monomials(n_vars - 1, q - lead):
            monomials.append((lead,) + rest)
    return monomials


def monomial_count(dim_L: int, q: int) -> int:
    """Number of degree-q monomials on a span of dimension dim_L."""
    return comb(dim_L + q - 1, q)


def _as_points(points_t) -> np.ndarray:
    """n × ℓ array of points; a flat sequence holds n points with ℓ = 1."""
    points = np.asarray(points_t, dtype=np.complex128)
    if points.ndim == 1:
        return points.reshape(-1, 1)
    if points.ndim != 2:
        raise ShapeError(f"Points must form an n × ℓ array, got shape {points.shape}")
    return points


def build_matrix(points_t: Sequence[np.ndarray], q: int) -> np.ndarray:
    """Evaluation matrix of all degree-q monomials at the homogenized points.

    Each point t becomes s = (t, 1) scaled to unit norm; rows are then scaled
    to unit max-abs entry.
    """
    if len(points_t) == 0:
        raise ShapeError("Cannot build an interpolation matrix from no points")
    points = _as_points(points_t)
    homogeneous = np.hstack([points, np.ones((points.shape[0], 1), dtype=np.complex128)])
    homogeneous /= np.linalg.norm(homogeneous, axis=1, keepdims=True)

    exponents = np.array(homogeneous_monomials(homogeneous.shape[1], q), dtype=np.int64)
    matrix = np.prod(homogeneous[:, None, :] ** exponents[None, :, :], axis=2)
    matrix /= np.max(np.abs(matrix), axis=1, keepdims=True)
    return matrix


def points_nonvanishing(points_t: Sequence[np.ndarray], q: int,
                        rel_tol: float = DEFAULT_TOLERANCES.rank_tol) -> InterpolationVerdict:
    """Rank of the degree-q interpolation matrix at the given t-coordinates.

    full_rank certifies, up to the rank tolerance, that no degree-q form on the
    slice span vanishes at the points. With fewer points than monomials the
    verdict can only refute.
    """
    points = _as_points(points_t)
    n_monomials = monomial_count(points.shape[1] + 1, q)
    report = numeric_rank(build_matrix(points, q), rel_tol)
    insufficient = points.shape[0] < n_monomials
    if insufficient:
        logger.warning(f"⚠️ {points.shape[0]} points for {n_monomials} monomials: "
                       f"degree {q} cannot be certified")

    verdict = InterpolationVerdict(
        q=q,
        n_monomials=n_monomials,
        n_points=points.shape[0],
        rank=report.rank,
        full_rank=report.rank == n_monomials,
        smallest_kept_sv_ratio=report.smallest_kept_ratio,
        insufficient_points=insufficient,
    )
    logger.info(f"🧮 Degree {q}: rank {verdict.rank} of {n_monomials} monomials "
                f"({verdict.n_points} points, weakest kept σ ratio "
                f"{verdict.smallest_kept_sv_ratio:.2e})")
    return verdict


def nonvanishing(ws, q: int,
                 rel_tol: float = DEFAULT_TOLERANCES.rank_tol) -> InterpolationVerdict:
    """points_nonvanishing at the t-coordinates of a witness set."""
    return points_nonvanishing(ws.t_points(), q, rel_tol)
