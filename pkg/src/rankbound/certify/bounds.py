"""
Asymptotic rank bound arithmetic.

If no nonzero degree-q form on a linear space L vanishes on L ∩ σ_r, the
asymptotic rank is at most r·C(dim L + q − 1, q)^{1/q}. Everything is done in
the log domain: q reaches ~2·10^5 for published degrees.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np
from scipy.special import gammaln

from ..errors import MissingCertificate, NoImprovement, ShapeError
from .interpolation import InterpolationVerdict

logger = logging.getLogger(__name__)

# Below this many factors the binomial is summed term by term
EXACT_SUM_LIMIT = 10 ** 6
MAX_SEARCH_Q = 10 ** 12


@dataclass
class BoundResult:
    """An asymptotic rank bound with the data it came from"""
    r: int
    dim_L: int
    q: int
    value: float
    target: Optional[int] = None
    improving: Optional[bool] = None
    provenance: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def log_binomial(n: int, k: int) -> float:
    """ln C(n, k).

    Sums ln((n−k'+i)/i) for i = 1..k' with k' = min(k, n−k) when k' is small
    enough; log-gamma otherwise.
    """
    if not 0 <= k <= n:
        raise ValueError(f"log_binomial needs 0 <= k <= n, got n={n}, k={k}")
    k = min(k, n - k)
    if k == 0:
        return 0.0
    if k <= EXACT_SUM_LIMIT:
        i = np.arange(1, k + 1, dtype=np.float64)
        return math.fsum(np.log1p((n - k) / i))
    return float(gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1))


def asymptotic_bound(r: int, dim_L: int, q: int) -> float:
    """r·C(dim_L + q − 1, q)^{1/q}."""
    if r < 1 or dim_L < 1 or q < 1:
        raise ValueError(f"Need r, dim_L, q >= 1, got {r}, {dim_L}, {q}")
    return r * math.exp(log_binomial(dim_L + q - 1, q) / q)


def minimal_q(r: int, dim_L: int, target: float) -> int:
    """Smallest q with asymptotic_bound(r, dim_L, q) < target.

    Exponential search for an upper bracket, then bisection on the
    monotonically decreasing bound.
    """
    if target <= r:
        raise NoImprovement(f"Target {target} does not exceed r = {r}; no degree improves on it")

    if asymptotic_bound(r, dim_L, 1) < target:
        return 1
    low, high = 1, 2
    while asymptotic_bound(r, dim_L, high) >= target:
        low, high = high, high * 2
        if high > MAX_SEARCH_Q:
            raise NoImprovement(f"No q up to {MAX_SEARCH_Q} reaches target {target}")
    # Invariant: bound(low) >= target > bound(high)
    while high - low > 1:
        middle = (low + high) // 2
        if asymptotic_bound(r, dim_L, middle) < target:
            high = middle
        else:
            low = middle
    return high


def bound_from_witness(ws, verdict: Optional[InterpolationVerdict] = None,
                       target: Optional[int] = None) -> BoundResult:
    """The bound a witness set supports.

    Codimension 1: d distinct points on a line rule out every nonzero binary
    form of degree d − 1, so q = d − 1 and dim L = 2 with no interpolation.
    Codimension ℓ ≥ 2: a full-rank verdict at degree q is required and
    dim L = ℓ + 1.

    Args:
        ws: Validated witness set
        verdict: Interpolation verdict for codimension >= 2
        target: Generic border rank to compare against (strict <)
    """
    codim = ws.profile.codim
    r = ws.profile.format.r
    n_points = len(ws.solutions)
    provenance = {
        "format": ws.profile.format.to_dict(),
        "codim": codim,
        "n_points": n_points,
    }

    if codim == 1:
        if n_points < 2:
            raise ShapeError("A codimension-1 bound needs at least two witness points")
        q = n_points - 1
        provenance["certificate"] = "univariate root count"
    else:
        if verdict is None or not verdict.full_rank:
            raise MissingCertificate(
                f"Codimension {codim} needs a full-rank interpolation verdict")
        q = verdict.q
        provenance["certificate"] = "interpolation"
        provenance["interpolation"] = verdict.to_dict()
    dim_L = codim + 1

    result = BoundResult(r=r, dim_L=dim_L, q=q, value=asymptotic_bound(r, dim_L, q),
                         provenance=provenance)
    if target is not None:
        result.target = target
        result.improving = result.value < target
        if not result.improving:
            logger.info(f"Bound {result.value:.6f} does not improve on generic rank {target}")
    return result
