"""
Parametrized slicing system for the secant variety σ_r of a Segre variety.

Each rank-one summand is written in the affine chart (a_i,1) ⊗ (b_i,1) ⊗ c_i
with a_i ∈ C^{a-1}, b_i ∈ C^{b-1}, c_i ∈ C^c, and the chart coordinates of all
summands are concatenated into one vector u. A generic affine slice of the
image is L = {A t + B}; fiber slices H u = H u0 cut the positive-dimensional
fibers of the parametrization to points, so

    F(u, t) = [ T(u) − (A t + B) ;  H (u − u0) ] = 0

is square. Tensors are flattened row-major: (i, j, k) ↦ (i·b + j)·c + k.
"""

import logging
from collections import Counter
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from ..config import DEFAULT_TOLERANCES
from ..errors import DisagreementError, InvalidFormat, ShapeError, SystemShapeError
from .formats import Format, SystemShape, expected_generic_rank, is_concise, system_shape
from .numerics import as_complex_vector, condition_number, numeric_rank

logger = logging.getLogger(__name__)

INDEX_ORDER = "row-major-ijk"
DIMENSION_VOTES = 3
SEED_CONDITION_LIMIT = 1e10
SEED_MAX_REDRAWS = 20


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard circularly-symmetric complex Gaussian samples."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


@dataclass(frozen=True)
class SecantProfile:
    """Measured dimension data of σ_r for one format"""
    format: Format
    dim: int

    def __post_init__(self):
        fmt = self.format
        if not 0 <= self.dim <= min(fmt.ambient_dim, fmt.n_u):
            raise InvalidFormat(
                f"Dimension {self.dim} impossible for {fmt.label()} "
                f"(ambient {fmt.ambient_dim}, chart unknowns {fmt.n_u})"
            )

    @property
    def codim(self) -> int:
        return self.format.ambient_dim - self.dim

    @property
    def fiber_dim(self) -> int:
        return self.format.n_u - self.dim

    @property
    def fills(self) -> bool:
        return self.codim == 0

    @property
    def is_defective(self) -> bool:
        return self.dim < self.format.expected_dim

    def system_shape(self) -> SystemShape:
        return system_shape(self.format, self.codim)

    def to_dict(self) -> dict:
        return {"dim": self.dim, "codim": self.codim, "fiber_dim": self.fiber_dim}


@dataclass(frozen=True)
class SliceParams:
    """Parameter point (A, B, H, u0) of the slicing system"""
    A: np.ndarray
    B: np.ndarray
    H: np.ndarray
    u0: np.ndarray

    def check(self, profile: SecantProfile) -> None:
        fmt = profile.format
        expected = {
            "A": (fmt.ambient_dim, profile.codim),
            "B": (fmt.ambient_dim,),
            "H": (profile.fiber_dim, fmt.n_u),
            "u0": (fmt.n_u,),
        }
        for name, shape in expected.items():
            actual = getattr(self, name).shape
            if actual != shape:
                raise ShapeError(f"Slice parameter {name} has shape {actual}, expected {shape}")

    def with_slice(self, A: np.ndarray, B: np.ndarray) -> "SliceParams":
        """Same fiber slices, new image slice."""
        return replace(self, A=A, B=B)

    def same_fiber_slices(self, other: "SliceParams") -> bool:
        return np.array_equal(self.H, other.H) and np.array_equal(self.u0, other.u0)


@dataclass
class Solution:
    """A point (u, t) of the square slicing system"""
    u: np.ndarray
    t: np.ndarray
    residual_norm: float = 0.0

    @property
    def x(self) -> np.ndarray:
        return np.concatenate([self.u, self.t])

    @classmethod
    def from_x(cls, x: np.ndarray, n_u: int, residual_norm: float = 0.0) -> "Solution":
        return cls(u=x[:n_u].copy(), t=x[n_u:].copy(), residual_norm=residual_norm)


def _chart_factors(fmt: Format, u: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split u into per-summand factor rows (r×a, r×b, r×c) with chart ones appended."""
    u = as_complex_vector(u, fmt.n_u)
    blocks = u.reshape(fmt.r, fmt.summand_unknowns)
    ones = np.ones((fmt.r, 1), dtype=np.complex128)
    a_rows = np.hstack([blocks[:, :fmt.a - 1], ones])
    b_rows = np.hstack([blocks[:, fmt.a - 1:fmt.a + fmt.b - 2], ones])
    c_rows = blocks[:, fmt.a + fmt.b - 2:]
    return a_rows, b_rows, c_rows


def parametrize_tensor(fmt: Format, u: np.ndarray) -> np.ndarray:
    """Flattened Σ_i (a_i,1) ⊗ (b_i,1) ⊗ c_i."""
    a_rows, b_rows, c_rows = _chart_factors(fmt, u)
    return np.einsum("ri,rj,rk->ijk", a_rows, b_rows, c_rows).reshape(-1)


def chart_jacobian(fmt: Format, u: np.ndarray) -> np.ndarray:
    """dT/du as an abc × n_u matrix."""
    a_rows, b_rows, c_rows = _chart_factors(fmt, u)
    a, b, c, r = fmt.a, fmt.b, fmt.c, fmt.r
    abc = fmt.ambient_dim

    e_a = np.eye(a, a - 1, dtype=np.complex128)
    e_b = np.eye(b, b - 1, dtype=np.complex128)
    e_c = np.eye(c, dtype=np.complex128)

    d_a = np.einsum("pq,rj,rk->pjkrq", e_a, b_rows, c_rows).reshape(abc, r, a - 1)
    d_b = np.einsum("ri,jq,rk->ijkrq", a_rows, e_b, c_rows).reshape(abc, r, b - 1)
    d_c = np.einsum("ri,rj,kq->ijkrq", a_rows, b_rows, e_c).reshape(abc, r, c)
    return np.concatenate([d_a, d_b, d_c], axis=2).reshape(abc, fmt.n_u)


def _check_point(profile: SecantProfile, params: SliceParams,
                 u: np.ndarray, t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    params.check(profile)
    return as_complex_vector(u, profile.format.n_u), as_complex_vector(t, profile.codim)


def evaluate(profile: SecantProfile, params: SliceParams,
             u: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Residual [T(u) − (A t + B); H (u − u0)] of length abc + m."""
    u, t = _check_point(profile, params, u, t)
    image_block = parametrize_tensor(profile.format, u) - (params.A @ t + params.B)
    fiber_block = params.H @ (u - params.u0)
    return np.concatenate([image_block, fiber_block])


def jacobian(profile: SecantProfile, params: SliceParams,
             u: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Jacobian [[dT/du, −A], [H, 0]] of shape (abc + m) × (n_u + ℓ)."""
    u, t = _check_point(profile, params, u, t)
    m, ell = profile.fiber_dim, profile.codim
    top = np.hstack([chart_jacobian(profile.format, u), -params.A])
    bottom = np.hstack([params.H, np.zeros((m, ell), dtype=np.complex128)])
    return np.vstack([top, bottom])


def residual_norm(profile: SecantProfile, params: SliceParams, sol: Solution) -> float:
    return float(np.linalg.norm(evaluate(profile, params, sol.u, sol.t)))


def revalidate(profile: SecantProfile, params: SliceParams, sol: Solution,
               tol: float = DEFAULT_TOLERANCES.validation_tol) -> bool:
    """Recompute the residual in place; True iff it is within tol."""
    sol.residual_norm = residual_norm(profile, params, sol)
    return sol.residual_norm <= tol


def secant_dimension(fmt: Format, rng_seed: int = 0,
                     rel_tol: float = DEFAULT_TOLERANCES.rank_tol) -> SecantProfile:
    """Dimension of σ_r as the generic rank of dT/du.

    Three independent Gaussian points vote; a strict majority wins, otherwise
    DisagreementError is raised.
    """
    children = np.random.SeedSequence(rng_seed).spawn(DIMENSION_VOTES)
    ranks = []
    for child in children:
        rng = np.random.default_rng(child)
        u = complex_gaussian(rng, fmt.n_u)
        ranks.append(numeric_rank(chart_jacobian(fmt, u), rel_tol).rank)

    dim, votes = Counter(ranks).most_common(1)[0]
    if votes * 2 <= DIMENSION_VOTES:
        raise DisagreementError(
            f"Jacobian ranks {ranks} for {fmt.label()} disagree; rerun with another seed",
            tuple(ranks))
    if votes < DIMENSION_VOTES:
        logger.warning(f"⚠️ Jacobian ranks {ranks} for {fmt.label()}; taking majority {dim}")

    profile = SecantProfile(format=fmt, dim=dim)
    logger.debug(f"📐 {fmt.label()}: dim {profile.dim}, codim {profile.codim}, "
                 f"fiber dim {profile.fiber_dim}")
    return profile


def generic_border_rank(a: int, b: int, c: int, rng_seed: int = 0,
                        rel_tol: float = DEFAULT_TOLERANCES.rank_tol) -> int:
    """Smallest r whose secant variety fills C^a ⊗ C^b ⊗ C^c."""
    base = Format(a, b, c)
    if not is_concise(a, b, c):
        logger.warning(f"Format {base.sides} is not concise")

    def fills(r: int) -> bool:
        fmt = base.with_rank(r)
        if fmt.n_u < fmt.ambient_dim:
            return False
        return secant_dimension(fmt, rng_seed, rel_tol).fills

    r = expected_generic_rank(a, b, c)
    if fills(r):
        while r > 1 and fills(r - 1):
            r -= 1
        return r

    # Every tensor has rank at most a·b (a ≤ b ≤ c)
    ceiling = base.a * base.b
    while r < ceiling:
        r += 1
        if fills(r):
            logger.info(f"📐 {base.sides}: generic border rank {r} above expectation "
                        f"{expected_generic_rank(a, b, c)} (defective)")
            return r
    return ceiling


def seed_witness(profile: SecantProfile, rng_seed: int = 0,
                 max_redraws: int = SEED_MAX_REDRAWS) -> Tuple[SliceParams, Solution]:
    """Random parameters with one known solution: t = 0 and B = T(u0).

    Redraws when H loses row rank or the Jacobian at the seed is badly
    conditioned.
    """
    if profile.codim == 0:
        raise SystemShapeError(f"{profile.format.label()} fills the ambient space; nothing to slice")
    profile.system_shape()

    fmt = profile.format
    rng = np.random.default_rng(rng_seed)
    last_condition: Optional[float] = None
    for attempt in range(max_redraws):
        u0 = complex_gaussian(rng, fmt.n_u)
        A = complex_gaussian(rng, (fmt.ambient_dim, profile.codim))
        H = complex_gaussian(rng, (profile.fiber_dim, fmt.n_u))
        B = parametrize_tensor(fmt, u0)
        params = SliceParams(A=A, B=B, H=H, u0=u0)
        sol = Solution(u=u0.copy(), t=np.zeros(profile.codim, dtype=np.complex128))

        if profile.fiber_dim and numeric_rank(H).rank < profile.fiber_dim:
            logger.info(f"🎲 Redrawing fiber slices (attempt {attempt + 1}): H rank deficient")
            continue
        last_condition = condition_number(jacobian(profile, params, sol.u, sol.t))
        if last_condition >= SEED_CONDITION_LIMIT:
            logger.info(f"🎲 Redrawing seed (attempt {attempt + 1}): "
                        f"Jacobian condition {last_condition:.2e}")
            continue

        sol.residual_norm = residual_norm(profile, params, sol)
        logger.debug(f"🌱 Seed for {fmt.label()}: condition {last_condition:.2e}")
        return params, sol

    raise SystemShapeError(
        f"No well-conditioned seed for {fmt.label()} after {max_redraws} draws "
        f"(last condition {last_condition}); the measured dimension may be wrong"
    )
