from fractions import Fraction
from math import gcd
from typing import Dict, Iterator, List, Sequence, Tuple
import numpy as np
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.error_management import SignRestriction
from Sumprod.Tool.bitset_management.compute_budget import ComputeBudget, resolve_budget
from Sumprod.Tool.set_core.finite_set import FiniteSet

# Below this bound float num / den orders distinct reduced fractions exactly:
# two distinct fractions differ by at least 1/(d1 d2), far above the rounding error.
FLOAT_EXACT_ORDER_BOUND = 1 << 25
DECOMPOSITION_BYTES_PER_PAIR = 64


class SlopeDecomposition:
    """
    Cover of A x A by the lines y = lambda x through the origin.

    Lines are stored in increasing slope order in a compressed layout: slope i is
    numerators[i] / denominators[i] (reduced) and its x-projection A_lambda is
    x_values[offsets[i]:offsets[i + 1]] in increasing order, as integers on the scale of
    `base_set.scaled()`.
    """

    def __init__(self, base_set: FiniteSet, numerators: Sequence[int], denominators: Sequence[int],
                 offsets: np.ndarray, x_values: Sequence[int]):
        self.base_set = base_set
        self.scale = base_set.scaled()[0]
        self.numerators = numerators
        self.denominators = denominators
        self.offsets = offsets
        self.x_values = x_values
        self.masses = np.diff(offsets)

    def __len__(self) -> int:
        return len(self.numerators)

    def slope(self, index: int) -> Fraction:
        return Fraction(int(self.numerators[index]), int(self.denominators[index]))

    def slopes(self) -> List[Fraction]:
        return [self.slope(index) for index in range(len(self))]

    def mass(self, index: int) -> int:
        return int(self.masses[index])

    def line_ints(self, index: int) -> List[int]:
        """x-coordinates of A_lambda as scaled integers."""
        return [int(x) for x in self.x_values[self.offsets[index]:self.offsets[index + 1]]]

    def line_points(self, index: int) -> List[Tuple[int, int]]:
        """Points (x, lambda x) of the line, as scaled integers."""
        numerator, denominator = int(self.numerators[index]), int(self.denominators[index])
        return [(x, x * numerator // denominator) for x in self.line_ints(index)]

    def line(self, index: int) -> FiniteSet:
        return FiniteSet.from_scaled(self.scale, self.line_ints(index))

    def index(self, slope) -> int:
        """Position of `slope` by exact binary search; ValueError when it is not a ratio of A."""
        slope = Fraction(slope)
        low, high = 0, len(self)
        while low < high:
            middle = (low + high) // 2
            if self.slope(middle) < slope:
                low = middle + 1
            else:
                high = middle
        if low == len(self) or self.slope(low) != slope:
            raise ValueError(f"{slope} is not a slope of the decomposition")
        return low

    def entries(self) -> Iterator[Tuple[Fraction, FiniteSet]]:
        for index in range(len(self)):
            yield self.slope(index), self.line(index)

    @property
    def mass_identity_holds(self) -> bool:
        return int(self.masses.sum()) == len(self.base_set) ** 2

    def __repr__(self):
        return f"SlopeDecomposition(|A|={len(self.base_set)}, slopes={len(self)})"


def require_positive(A: FiniteSet):
    if not A.is_positive:
        raise SignRestriction(f"slope geometry needs a strictly positive set, got {A.sign_summary.value}")


def slope_decomposition(A: FiniteSet, budget: ComputeBudget = None) -> SlopeDecomposition:
    """
    Group the pairs (x, y) of A x A by y / x.

    :raises SignRestriction: unless every element of A is positive
    """
    logger = get_logger()
    require_positive(A)
    budget = resolve_budget(budget)
    ints = A.scaled()[1]
    size = len(ints)
    if ints[-1] <= FLOAT_EXACT_ORDER_BOUND and budget.fits_memory(DECOMPOSITION_BYTES_PER_PAIR * size * size):
        decomposition = _decompose_numpy(A, ints)
    else:
        decomposition = _decompose_python(A, ints)
    logger.debug(f"slope_decomposition: |A|={size}, {len(decomposition)} slopes")
    return decomposition


def _decompose_numpy(A: FiniteSet, ints: Sequence[int]) -> SlopeDecomposition:
    values = np.asarray(ints, dtype=np.int64)
    size = len(values)
    xs = np.repeat(values, size)
    ys = np.tile(values, size)
    divisor = np.gcd(xs, ys)
    numerators = ys // divisor
    denominators = xs // divisor
    # stable sort keeps the x-major pair order, so each line lists its x's increasingly
    order = np.argsort(numerators / denominators, kind="stable")
    numerators, denominators, xs = numerators[order], denominators[order], xs[order]
    changes = np.flatnonzero((numerators[1:] != numerators[:-1]) | (denominators[1:] != denominators[:-1])) + 1
    starts = np.concatenate(([0], changes))
    offsets = np.concatenate((starts, [len(xs)])).astype(np.int64)
    return SlopeDecomposition(A, numerators[starts], denominators[starts], offsets, xs)


def _decompose_python(A: FiniteSet, ints: Sequence[int]) -> SlopeDecomposition:
    lines: Dict[Tuple[int, int], List[int]] = {}
    for x in ints:
        for y in ints:
            divisor = gcd(x, y)
            lines.setdefault((y // divisor, x // divisor), []).append(x)
    keys = sorted(lines, key=lambda key: Fraction(key[0], key[1]))
    offsets = np.zeros(len(keys) + 1, dtype=np.int64)
    x_values = []
    for position, key in enumerate(keys):
        x_values.extend(lines[key])
        offsets[position + 1] = len(x_values)
    return SlopeDecomposition(A, [key[0] for key in keys], [key[1] for key in keys], offsets, x_values)
