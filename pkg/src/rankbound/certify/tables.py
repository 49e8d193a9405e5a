"""
Published codimension 1, 2 and 3 results, and their recomputation.

Closed-form columns (variable and parameter counts, bound values, minimal
degrees) are recomputed from the published degrees; codimensions and generic
border ranks are measured numerically.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

from ..config import DEFAULT_TOLERANCES
from ..core.formats import Format, concise_formats, system_shape
from ..core.segre_system import generic_border_rank, secant_dimension
from ..errors import RankBoundError
from .bounds import asymptotic_bound, minimal_q
from .interpolation import monomial_count

logger = logging.getLogger(__name__)

BOUND_TOLERANCE = 1e-5


@dataclass(frozen=True)
class CodimOneRow:
    """Published codimension-1 result; bound is None where it does not improve"""
    r: int
    a: int
    b: int
    c: int
    n_vars: int
    n_params: int
    degree: int
    bound: Optional[float]
    family: bool = False

    @property
    def format(self) -> Format:
        return Format(self.a, self.b, self.c, self.r)


@dataclass(frozen=True)
class HigherCodimRow:
    """Published codimension-2/3 result; degree is None where tracking failed"""
    r: int
    a: int
    b: int
    c: int
    codim: int
    degree: Optional[int]
    minimal_q: int

    @property
    def format(self) -> Format:
        return Format(self.a, self.b, self.c, self.r)


def _family_row(n: int) -> CodimOneRow:
    """σ_{3n+1}(3, 2n+1, 2n+1): degree 6n+3, never improving."""
    side = 2 * n + 1
    return CodimOneRow(r=3 * n + 1, a=3, b=side, c=side, n_vars=3 * side ** 2,
                       n_params=6 * side ** 2, degree=6 * n + 3, bound=None, family=True)


CODIM_ONE_ROWS: List[CodimOneRow] = [
    _family_row(1),
    _family_row(2),
    CodimOneRow(8, 3, 5, 7, 105, 210, 105, 8.366128),
    CodimOneRow(17, 4, 7, 14, 392, 784, 1229, 17.098769),
    CodimOneRow(17, 6, 6, 9, 324, 648, 3601, 17.038715),
    CodimOneRow(18, 7, 7, 7, 343, 686, 187000, 18.001169),
    CodimOneRow(19, 5, 8, 10, 400, 800, 3638, 19.042882),
]

HIGHER_CODIM_ROWS: List[HigherCodimRow] = [
    HigherCodimRow(9, 4, 4, 8, 2, 30005, 76),
    HigherCodimRow(10, 3, 6, 9, 2, 78589, 87),
    HigherCodimRow(11, 3, 7, 9, 2, 23724, 98),
    HigherCodimRow(13, 5, 6, 7, 2, 3105, 121),
    HigherCodimRow(14, 5, 6, 8, 2, 1767, 132),
    HigherCodimRow(18, 4, 8, 13, 2, 1057, 180),
    HigherCodimRow(19, 5, 7, 12, 2, 2333, 192),
    HigherCodimRow(7, 4, 4, 5, 3, 44000, 88),
    HigherCodimRow(9, 4, 5, 6, 3, 33634, 120),
    HigherCodimRow(11, 4, 6, 7, 3, 8625, 154),
    HigherCodimRow(12, 3, 7, 11, 3, 2888, 171),
    HigherCodimRow(13, 4, 7, 8, 3, 2503, 189),
    HigherCodimRow(14, 3, 9, 11, 3, 879, 207),
    HigherCodimRow(15, 4, 8, 9, 3, 842, 225),
    HigherCodimRow(17, 4, 9, 10, 3, 327, 262),
    HigherCodimRow(17, 5, 6, 12, 3, 317, 262),
    HigherCodimRow(19, 4, 10, 11, 3, None, 299),
]


def _mismatch(column: str, published, computed, known: bool = False) -> Dict:
    return {"column": column, "published": published, "computed": computed, "known": known}


def check_codim_one(rng_seed: int = 0, degrees: Optional[Dict[Format, int]] = None,
                    rank_tol: float = DEFAULT_TOLERANCES.rank_tol) -> List[Dict]:
    """Recompute every codimension-1 row.

    Args:
        rng_seed: Seed for the numerical dimension measurements
        degrees: Degrees measured at desk scale, keyed by format, compared
            against the published ones
        rank_tol: Relative singular value cutoff for the rank measurements

    Returns:
        One dict per row with recomputed columns and a list of mismatches
    """
    results = []
    for row in CODIM_ONE_ROWS:
        fmt = row.format
        profile = secant_dimension(fmt, rng_seed, rank_tol)
        gbr = generic_border_rank(fmt.a, fmt.b, fmt.c, rng_seed, rank_tol)
        mismatches = []

        if profile.codim != 1:
            mismatches.append(_mismatch("codim", 1, profile.codim))
            shape = None
        else:
            shape = system_shape(fmt, 1)
            if shape.n_vars != row.n_vars:
                # The defective family is listed with a reduced parametrization
                mismatches.append(_mismatch("n_vars", row.n_vars, shape.n_vars, known=row.family))
            if shape.n_params != row.n_params:
                mismatches.append(_mismatch("n_params", row.n_params, shape.n_params))

        q = row.degree - 1
        value = asymptotic_bound(fmt.r, 2, q)
        improving = value < gbr
        if row.bound is None:
            if improving:
                mismatches.append(_mismatch("bound", None, value))
        elif not (value < row.bound and row.bound - value <= BOUND_TOLERANCE):
            mismatches.append(_mismatch("bound", row.bound, value))

        entry = {
            "format": fmt.to_dict(),
            "codim": profile.codim,
            "defective": profile.is_defective,
            "generic_border_rank": gbr,
            "n_vars": shape.n_vars if shape else None,
            "n_params": shape.n_params if shape else None,
            "degree": row.degree,
            "q": q,
            "bound": value,
            "improving": improving,
        }
        if degrees and fmt in degrees:
            entry["measured_degree"] = degrees[fmt]
            if degrees[fmt] != row.degree:
                mismatches.append(_mismatch("degree", row.degree, degrees[fmt]))
        entry["mismatches"] = mismatches
        results.append(entry)
        logger.info(f"📋 {fmt.label()}: bound {value:.6f}, {len(mismatches)} mismatch(es)")
    return results


def check_higher_codim(rng_seed: int = 0,
                       rank_tol: float = DEFAULT_TOLERANCES.rank_tol) -> List[Dict]:
    """Recompute codimensions, generic border ranks and minimal q of every codim-2/3 row."""
    results = []
    for row in HIGHER_CODIM_ROWS:
        fmt = row.format
        profile = secant_dimension(fmt, rng_seed, rank_tol)
        gbr = generic_border_rank(fmt.a, fmt.b, fmt.c, rng_seed, rank_tol)
        mismatches = []
        if profile.codim != row.codim:
            mismatches.append(_mismatch("codim", row.codim, profile.codim))

        dim_L = row.codim + 1
        try:
            q = minimal_q(fmt.r, dim_L, gbr)
        except RankBoundError as e:
            logger.warning(f"{fmt.label()}: {e}")
            q = None
        if q != row.minimal_q:
            mismatches.append(_mismatch("minimal_q", row.minimal_q, q))

        results.append({
            "format": fmt.to_dict(),
            "codim": profile.codim,
            "generic_border_rank": gbr,
            "degree": row.degree,
            "dim_L": dim_L,
            "minimal_q": q,
            "interpolation_columns": None if q is None else monomial_count(dim_L, q),
            "mismatches": mismatches,
        })
        logger.info(f"📋 {fmt.label()}: minimal q {q}, {len(mismatches)} mismatch(es)")
    return results


def scan_formats(max_rank: int, rng_seed: int = 0,
                 rank_tol: float = DEFAULT_TOLERANCES.rank_tol) -> List[Dict]:
    """Codimensions of every σ_r below the generic border rank of small concise formats.

    Candidate formats come from concise_formats(max_rank); for each, r runs
    from 2 up to one below the measured generic border rank.
    """
    results = []
    for a, b, c in concise_formats(max_rank):
        gbr = generic_border_rank(a, b, c, rng_seed, rank_tol)
        for r in range(2, gbr):
            profile = secant_dimension(Format(a, b, c, r), rng_seed, rank_tol)
            results.append({
                "format": profile.format.to_dict(),
                "generic_border_rank": gbr,
                "dim": profile.dim,
                "codim": profile.codim,
                "defective": profile.is_defective,
            })
        logger.debug(f"🔎 {(a, b, c)}: generic border rank {gbr}")
    logger.info(f"🔎 Scanned {len(results)} secant varieties up to rank {max_rank}")
    return results
