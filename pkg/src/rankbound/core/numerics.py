"""
Complex dense linear algebra with an explicit tolerance policy.

LU solves go through LAPACK getrf/gecon/getrs so the condition estimate comes
for free with the factorization; ranks come from singular values.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import svd
from scipy.linalg.lapack import get_lapack_funcs

from ..config import DEFAULT_TOLERANCES
from ..errors import ShapeError, SingularSystem

logger = logging.getLogger(__name__)

# Residual target for linear_solve, relative to 1 + ‖v‖
SOLVE_RESIDUAL_TOL = 1e-10


@dataclass
class RankReport:
    """Numeric rank with the singular values it was read from"""
    rank: int
    singular_values: np.ndarray

    @property
    def smallest_kept_ratio(self) -> float:
        """σ_rank / σ_max, the margin of the weakest singular value counted."""
        if self.rank == 0:
            return 0.0
        return float(self.singular_values[self.rank - 1] / self.singular_values[0])


def as_complex_matrix(data, rows: Optional[int] = None, cols: Optional[int] = None) -> np.ndarray:
    """Validate and convert to a finite 2-D complex128 array."""
    matrix = np.asarray(data, dtype=np.complex128)
    if matrix.ndim != 2:
        raise ShapeError(f"Expected a matrix, got array with shape {matrix.shape}")
    if rows is not None and matrix.shape[0] != rows:
        raise ShapeError(f"Expected {rows} rows, got {matrix.shape[0]}")
    if cols is not None and matrix.shape[1] != cols:
        raise ShapeError(f"Expected {cols} columns, got {matrix.shape[1]}")
    if not np.all(np.isfinite(matrix)):
        raise ShapeError("Matrix has non-finite entries")
    return matrix


def as_complex_vector(data, length: Optional[int] = None) -> np.ndarray:
    """Validate and convert to a finite 1-D complex128 array."""
    vector = np.asarray(data, dtype=np.complex128)
    if vector.ndim != 1:
        raise ShapeError(f"Expected a vector, got array with shape {vector.shape}")
    if length is not None and vector.shape[0] != length:
        raise ShapeError(f"Expected length {length}, got {vector.shape[0]}")
    if not np.all(np.isfinite(vector)):
        raise ShapeError("Vector has non-finite entries")
    return vector


def linear_solve(matrix: np.ndarray, rhs: np.ndarray,
                 condition_limit: float = DEFAULT_TOLERANCES.condition_limit) -> np.ndarray:
    """Solve M x = v for square complex M.

    Args:
        matrix: Square complex matrix
        rhs: Right-hand side of matching length
        condition_limit: Largest accepted 1-norm condition estimate

    Returns:
        x with ‖Mx − v‖ ≤ 1e−10·(1+‖v‖)

    Raises:
        SingularSystem: condition estimate above the limit, or the residual
            target missed after one refinement step
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    rhs = np.asarray(rhs, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ShapeError(f"linear_solve needs a square matrix, got {matrix.shape}")
    if rhs.shape != (matrix.shape[0],):
        raise ShapeError(f"Right-hand side of shape {rhs.shape} does not match {matrix.shape}")

    n = matrix.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.complex128)

    getrf, gecon, getrs = get_lapack_funcs(("getrf", "gecon", "getrs"), (matrix, rhs))
    anorm = np.linalg.norm(matrix, 1)
    lu, piv, info = getrf(matrix)
    if info > 0 or anorm == 0:
        raise SingularSystem("Exactly singular matrix in LU factorization")

    rcond, _ = gecon(lu, anorm, norm="1")
    condition = np.inf if rcond == 0 else 1.0 / rcond
    if condition > condition_limit:
        raise SingularSystem(f"Condition estimate {condition:.3e} exceeds {condition_limit:.1e}",
                             condition)

    x, _ = getrs(lu, piv, rhs)
    target = SOLVE_RESIDUAL_TOL * (1.0 + np.linalg.norm(rhs))
    residual = rhs - matrix @ x
    if np.linalg.norm(residual) > target:
        # One step of iterative refinement
        dx, _ = getrs(lu, piv, residual)
        x = x + dx
        residual = rhs - matrix @ x
        if np.linalg.norm(residual) > target:
            raise SingularSystem(
                f"Residual {np.linalg.norm(residual):.3e} above {target:.3e} "
                f"(condition estimate {condition:.3e})", condition)
    return x


def numeric_rank(matrix: np.ndarray, rel_tol: float = DEFAULT_TOLERANCES.rank_tol) -> RankReport:
    """Count singular values above rel_tol·σ_max."""
    if not 0 < rel_tol < 1:
        raise ValueError(f"rel_tol must lie in (0, 1), got {rel_tol}")
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.size == 0:
        return RankReport(rank=0, singular_values=np.zeros(0))

    singular_values = svd(matrix, compute_uv=False)
    sigma_max = singular_values[0]
    if sigma_max == 0:
        return RankReport(rank=0, singular_values=singular_values)
    rank = int(np.count_nonzero(singular_values > rel_tol * sigma_max))
    return RankReport(rank=rank, singular_values=singular_values)


def condition_number(matrix: np.ndarray) -> float:
    """2-norm condition number from singular values (inf when singular)."""
    singular_values = svd(np.asarray(matrix, dtype=np.complex128), compute_uv=False)
    if singular_values.size == 0:
        return 1.0
    if singular_values[-1] == 0:
        return float("inf")
    return float(singular_values[0] / singular_values[-1])
