"""
Tensor format bookkeeping: conciseness, unknown and parameter counts,
expected dimensions.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterator, Tuple

from ..errors import InvalidFormat, SystemShapeError

logger = logging.getLogger(__name__)


def _sorted_sides(a: int, b: int, c: int) -> Tuple[int, int, int]:
    sides = (a, b, c)
    for side in sides:
        if isinstance(side, bool) or not isinstance(side, int) or side < 1:
            raise InvalidFormat(f"Tensor sides must be positive integers, got {sides}")
    return tuple(sorted(sides))  # type: ignore[return-value]


@dataclass(frozen=True)
class Format:
    """A tensor format C^a ⊗ C^b ⊗ C^c with secant index r (sides sorted a ≤ b ≤ c)"""
    a: int
    b: int
    c: int
    r: int = 1

    def __post_init__(self):
        a, b, c = _sorted_sides(self.a, self.b, self.c)
        if isinstance(self.r, bool) or not isinstance(self.r, int) or self.r < 1:
            raise InvalidFormat(f"Secant index must be a positive integer, got {self.r!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def sides(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def ambient_dim(self) -> int:
        return self.a * self.b * self.c

    @property
    def summand_unknowns(self) -> int:
        """Chart unknowns of one summand (a_i,1) ⊗ (b_i,1) ⊗ c_i."""
        return (self.a - 1) + (self.b - 1) + self.c

    @property
    def n_u(self) -> int:
        return self.r * self.summand_unknowns

    @property
    def expected_dim(self) -> int:
        """Parameter-count expectation min(abc, n_u) for the secant dimension."""
        return min(self.ambient_dim, self.n_u)

    def with_rank(self, r: int) -> "Format":
        return Format(self.a, self.b, self.c, r)

    def label(self) -> str:
        return f"σ_{self.r}({self.a},{self.b},{self.c})"

    @classmethod
    def parse(cls, text: str, r: int = 1) -> "Format":
        """Parse "A,B,C" as given on the command line."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise InvalidFormat(f"Expected a format like 3,5,7, got {text!r}")
        try:
            a, b, c = (int(p) for p in parts)
        except ValueError as e:
            raise InvalidFormat(f"Expected integer sides, got {text!r}") from e
        return cls(a, b, c, r)

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "r": self.r}


@dataclass(frozen=True)
class SystemShape:
    """Size of the square slicing system for one (format, codimension) pair"""
    n_vars: int
    n_eqs: int
    n_params: int
    n_fiber_slices: int


def is_concise(a: int, b: int, c: int) -> bool:
    """True iff the sorted sides satisfy c < a·b."""
    a, b, c = _sorted_sides(a, b, c)
    return c < a * b


def system_shape(fmt: Format, profile_codim: int) -> SystemShape:
    """Variable, equation and parameter counts of the chart/slice/fiber-slice system.

    Args:
        fmt: Tensor format with secant index
        profile_codim: Codimension ℓ of σ_r in the ambient space

    Returns:
        SystemShape with n_vars == n_eqs
    """
    if profile_codim < 0:
        raise SystemShapeError(f"Codimension must be nonnegative, got {profile_codim}")
    if profile_codim == 0:
        raise SystemShapeError(
            f"{fmt.label()} fills the ambient space (codimension 0); slicing does not apply"
        )

    n_vars = fmt.n_u + profile_codim
    fiber_slices = n_vars - fmt.ambient_dim
    if fiber_slices < 0:
        raise SystemShapeError(
            f"{fmt.label()} cannot have codimension {profile_codim} with "
            f"{fmt.n_u} chart unknowns"
        )

    return SystemShape(
        n_vars=n_vars,
        n_eqs=fmt.ambient_dim + fiber_slices,
        n_params=fmt.ambient_dim * (profile_codim + 1),
        n_fiber_slices=fiber_slices,
    )


def expected_generic_rank(a: int, b: int, c: int) -> int:
    """Heuristic ⌈abc/(a+b+c−2)⌉; only a search seed for generic_border_rank."""
    a, b, c = _sorted_sides(a, b, c)
    return max(1, math.ceil(a * b * c / (a + b + c - 2)))


def concise_formats(max_rank: int) -> Iterator[Tuple[int, int, int]]:
    """Concise formats whose expected generic rank is ≤ max_rank and above c.

    Formats are yielded sorted (a ≤ b ≤ c). Since the generic rank is at least
    c for concise formats and at least abc/(a+b+c-2), the enumeration is finite.
    """
    for c in range(2, max_rank + 1):
        for b in range(2, c + 1):
            for a in range(2, b + 1):
                if not is_concise(a, b, c):
                    continue
                expected = expected_generic_rank(a, b, c)
                if c < expected <= max_rank:
                    yield (a, b, c)
