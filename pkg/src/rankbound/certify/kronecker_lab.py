"""
Desk-scale checks of the symmetric-power framework.

T^{⊗q} expands in the basis {T^(g)} indexed by compositions g of q over the
index set Δ = [a]×[b]×[c]: T^{⊗q} = Σ_g T^g · T^(g), where T^g = Π_δ T_δ^{g(δ)}
and T^(g) is the sum of e_{δ1} ⊗ … ⊗ e_{δq} over the distinct arrangements of
the multiset g (no multinomial weights). Every routine here hard-fails above a
size guard; nothing streams.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from itertools import combinations_with_replacement
from math import comb, factorial, prod
from typing import Dict, Iterator, List, Tuple

import numpy as np
from scipy import sparse

from ..config import DEFAULT_TOLERANCES
from ..core.formats import Format
from ..core.numerics import numeric_rank
from ..core.segre_system import complex_gaussian
from ..errors import SizeGuardError

logger = logging.getLogger(__name__)

SIZE_GUARD = 10 ** 7
SPAN_SAMPLE_MARGIN = 5


@dataclass(frozen=True)
class CompositionIndex:
    """A composition g: Δ → N of q, stored as sorted (δ, g(δ)) pairs over flat indices"""
    n_cells: int
    counts: Tuple[Tuple[int, int], ...]

    @property
    def q(self) -> int:
        return sum(multiplicity for _, multiplicity in self.counts)

    @classmethod
    def from_cells(cls, n_cells: int, cells) -> "CompositionIndex":
        """Composition from the multiset of flat cell indices δ1, …, δq."""
        tally = Counter(cells)
        for cell in tally:
            if not 0 <= cell < n_cells:
                raise ValueError(f"Cell {cell} outside [0, {n_cells})")
        return cls(n_cells=n_cells, counts=tuple(sorted(tally.items())))

    def as_dict(self) -> Dict[int, int]:
        return dict(self.counts)

    def cells(self) -> Tuple[int, ...]:
        """The multiset as a sorted tuple of cells."""
        return tuple(cell for cell, multiplicity in self.counts for _ in range(multiplicity))

    def arrangement_count(self) -> int:
        """q! / Π g(δ)!."""
        return factorial(self.q) // prod(factorial(m) for _, m in self.counts)


def _check_size(n_cells: int, q: int) -> None:
    if q < 1:
        raise ValueError(f"q must be at least 1, got {q}")
    if n_cells ** q > SIZE_GUARD:
        raise SizeGuardError(f"(abc)^q = {n_cells}^{q} exceeds the guard {SIZE_GUARD:.0e}")


def compositions(n_cells: int, q: int) -> Iterator[CompositionIndex]:
    """All compositions of q over n_cells cells; C(n_cells + q − 1, q) of them."""
    for cells in combinations_with_replacement(range(n_cells), q):
        yield CompositionIndex.from_cells(n_cells, cells)


def kronecker_power(T: np.ndarray, q: int) -> np.ndarray:
    """T ⊗ … ⊗ T (q factors) in the fixed flattening order."""
    T = np.asarray(T, dtype=np.complex128).reshape(-1)
    _check_size(T.shape[0], q)
    return reduce(np.kron, [T] * q)


def coefficient(T: np.ndarray, g: CompositionIndex) -> complex:
    """T^g = Π_δ T_δ^{g(δ)}."""
    T = np.asarray(T, dtype=np.complex128).reshape(-1)
    value = 1.0 + 0.0j
    for cell, multiplicity in g.counts:
        value *= T[cell] ** multiplicity
    return complex(value)


def _multiset_permutations(cells: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    """Distinct orderings of a sorted multiset."""
    if not cells:
        yield ()
        return
    for i, cell in enumerate(cells):
        if i > 0 and cells[i - 1] == cell:
            continue
        for rest in _multiset_permutations(cells[:i] + cells[i + 1:]):
            yield (cell,) + rest


def _flat_index(arrangement: Tuple[int, ...], n_cells: int) -> int:
    index = 0
    for cell in arrangement:
        index = index * n_cells + cell
    return index


def basis_vector(g: CompositionIndex) -> sparse.csr_matrix:
    """T^(g) as a 1 × (abc)^q sparse row with unit entries at every arrangement of g."""
    _check_size(g.n_cells, g.q)
    columns = [_flat_index(arr, g.n_cells) for arr in _multiset_permutations(g.cells())]
    data = np.ones(len(columns), dtype=np.complex128)
    rows = np.zeros(len(columns), dtype=np.int64)
    return sparse.csr_matrix((data, (rows, columns)), shape=(1, g.n_cells ** g.q))


def verify_decomposition(T: np.ndarray, q: int) -> float:
    """‖T^{⊗q} − Σ_g T^g T^(g)‖."""
    T = np.asarray(T, dtype=np.complex128).reshape(-1)
    power = kronecker_power(T, q)
    expansion = np.zeros_like(power)
    for g in compositions(T.shape[0], q):
        row = basis_vector(g)
        expansion[row.indices] += coefficient(T, g) * row.data
    return float(np.linalg.norm(power - expansion))


def span_dimension(a: int, b: int, c: int, q: int, n_samples: int,
                   rng: np.random.Generator, rel_tol: float = DEFAULT_TOLERANCES.rank_tol) -> int:
    """Numeric dimension of span{T^{⊗q}} over random T.

    Kronecker powers are symmetric tensors, so only one coordinate per
    composition (its sorted arrangement) is kept.
    """
    fmt = Format(a, b, c)
    n_cells = fmt.ambient_dim
    _check_size(n_cells, q)
    expected = comb(n_cells + q - 1, q)
    if n_samples < expected + SPAN_SAMPLE_MARGIN:
        raise ValueError(f"Need at least {expected + SPAN_SAMPLE_MARGIN} samples, got {n_samples}")

    columns = [_flat_index(g.cells(), n_cells) for g in compositions(n_cells, q)]
    rows: List[np.ndarray] = []
    for _ in range(n_samples):
        rows.append(kronecker_power(complex_gaussian(rng, n_cells), q)[columns])
    dimension = numeric_rank(np.vstack(rows), rel_tol).rank
    logger.info(f"🧩 span of {q}-th Kronecker powers over {fmt.sides}: {dimension} "
                f"(stars and bars {expected})")
    return dimension
