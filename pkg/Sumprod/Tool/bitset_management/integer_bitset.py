"""
Integer fast path.

Sets of integers become numpy boolean indicator vectors (offset so the smallest element sits at
index 0). Sumsets of indicators are computed by shift-or when one side is sparse and by FFT
convolution otherwise; pairwise tables fall back to numpy outer products, then to Python ints
when values leave the int64 range. Every path returns the same sorted distinct values.
"""
from bisect import bisect_left
from math import gcd
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence
import numpy as np
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.statistics_managment import get_statistics_manager
from Sumprod.Utils.error_management import ResourceLimit
from Sumprod.Utils.configuration_management.enums import BinaryOp
from Sumprod.Tool.bitset_management.compute_budget import ComputeBudget, NUMPY_PAIR_BYTES, PYTHON_PAIR_BYTES, \
    FFT_BYTES_PER_SLOT

SHIFT_OR_LIMIT = 64


def next_power_of_two(value: int) -> int:
    return 1 << max(0, (value - 1).bit_length())


def indicator(values: Sequence[int], length: int, offset: int = 0) -> np.ndarray:
    marks = np.zeros(length, dtype=bool)
    marks[np.asarray(values, dtype=np.int64) - offset] = True
    return marks


def shift_or_sumset(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """OR a copy of the denser indicator into place once per set bit of the sparser one."""
    if np.count_nonzero(left) > np.count_nonzero(right):
        left, right = right, left
    result = np.zeros(len(left) + len(right) - 1, dtype=bool)
    width = len(right)
    for position in np.flatnonzero(left):
        result[position:position + width] |= right
    return result


def fft_sumset(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    size = len(left) + len(right) - 1
    fft_size = next_power_of_two(size)
    spectrum = np.fft.rfft(left.astype(np.float64), fft_size)
    spectrum *= np.fft.rfft(right.astype(np.float64), fft_size)
    # convolution entries are non-negative integers; rounding error stays far below 1/2
    return np.fft.irfft(spectrum, fft_size)[:size] > 0.5


def sumset_indicator(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    if min(np.count_nonzero(left), np.count_nonzero(right)) <= SHIFT_OR_LIMIT:
        return shift_or_sumset(left, right)
    return fft_sumset(left, right)


def indicator_sumset_bytes(span: int) -> int:
    return span + FFT_BYTES_PER_SLOT * next_power_of_two(span)


def result_magnitude(op: BinaryOp, left: Sequence[int], right: Sequence[int]) -> int:
    left_magnitude = max(abs(left[0]), abs(left[-1]))
    right_magnitude = max(abs(right[0]), abs(right[-1]))
    if op is BinaryOp.SUM:
        return left_magnitude + right_magnitude
    return left_magnitude * right_magnitude


def _use_indicator(left: Sequence[int], right: Sequence[int], budget: ComputeBudget) -> bool:
    span = left[-1] + right[-1] - left[0] - right[0] + 1
    pairs = len(left) * len(right)
    return (span <= budget.int_fast_path_max_range and span <= 16 * pairs
            and budget.fits_memory(indicator_sumset_bytes(span)))


def _sum_by_indicator(left: Sequence[int], right: Sequence[int]) -> np.ndarray:
    left_marks = indicator(left, left[-1] - left[0] + 1, left[0])
    right_marks = indicator(right, right[-1] - right[0] + 1, right[0])
    return np.flatnonzero(sumset_indicator(left_marks, right_marks)) + (left[0] + right[0])


def outer_table(op: BinaryOp, left: Sequence[int], right: Sequence[int]) -> np.ndarray:
    left_array = np.asarray(left, dtype=np.int64)
    right_array = np.asarray(right, dtype=np.int64)
    if op is BinaryOp.SUM:
        return np.add.outer(left_array, right_array).ravel()
    return np.multiply.outer(left_array, right_array).ravel()


def pairwise_values(op: BinaryOp, left: Sequence[int], right: Sequence[int], budget: ComputeBudget) -> List[int]:
    """
    Sorted distinct values of l + r (op SUM) or l * r (op PRODUCT) over l in left, r in right.

    :param left: strictly increasing ints
    :param right: strictly increasing ints
    :raises ResourceLimit: when no path fits the memory budget
    """
    statistics = get_statistics_manager()
    pairs = len(left) * len(right)
    if budget.fits_int64(result_magnitude(op, left, right)):
        if op is BinaryOp.SUM and _use_indicator(left, right, budget):
            statistics.increment('fast_path_indicator')
            return _sum_by_indicator(left, right).tolist()
        if budget.fits_memory(NUMPY_PAIR_BYTES * pairs):
            statistics.increment('fast_path_numpy')
            return np.unique(outer_table(op, left, right)).tolist()
    if budget.fits_memory(PYTHON_PAIR_BYTES * pairs):
        if op is BinaryOp.SUM:
            return sorted({a + b for a in left for b in right})
        return sorted({a * b for a in left for b in right})
    raise ResourceLimit(f"{op.value} of sets of sizes {len(left)} and {len(right)} does not fit the memory budget",
                        required=PYTHON_PAIR_BYTES * pairs, budget=budget.memory_budget_bytes)


def sum_count(left: Sequence[int], right: Sequence[int], budget: ComputeBudget):
    """
    |left + right| without building the result when it would not fit the budget.

    Returns (count, streamed).
    :raises ResourceLimit: when the budget is exceeded and streamed counting is disabled
    """
    int64 = budget.fits_int64(result_magnitude(BinaryOp.SUM, left, right))
    if int64 and _use_indicator(left, right, budget):
        get_statistics_manager().increment('fast_path_indicator')
        return len(_sum_by_indicator(left, right)), False
    pair_bytes = (NUMPY_PAIR_BYTES if int64 else PYTHON_PAIR_BYTES) * len(left) * len(right)
    if budget.fits_memory(pair_bytes):
        return len(pairwise_values(BinaryOp.SUM, left, right, budget)), False
    if not budget.streamed_count:
        raise ResourceLimit("sumset does not fit the memory budget", required=pair_bytes,
                            budget=budget.memory_budget_bytes,
                            advice="enable streamed_count or raise memory_budget_bytes")
    return streamed_sum_count(left, right, budget, pair_bytes, int64), True


def streamed_sum_count(left: Sequence[int], right: Sequence[int], budget: ComputeBudget,
                       estimated_bytes: int, int64: bool) -> int:
    """
    Exact |left + right| by value-range partitions.

    Cuts are taken at quantiles of left + right[0]; for each r the part of `left` landing in a
    partition is one contiguous slice found by bisection. Partitions are disjoint, so their
    distinct counts add up to the total.
    """
    logger = get_logger()
    parts = max(budget.partition_count, -(-estimated_bytes // max(1, budget.memory_budget_bytes)))
    parts = min(parts, len(left))
    cuts = [left[(k * len(left)) // parts] + right[0] for k in range(1, parts)]
    bounds = list(zip([None] + cuts, cuts + [None]))
    logger.debug(f"streamed sumset count: {len(left)} x {len(right)} over {len(bounds)} partitions, "
                 f"{budget.workers} workers")
    left_array = np.asarray(left, dtype=np.int64) if int64 else None

    def count_partition(bound):
        return _count_partition(left, right, bound[0], bound[1], left_array)

    with ThreadPoolExecutor(max_workers=budget.workers) as executor:
        counts = list(executor.map(count_partition, bounds))
    get_statistics_manager().increment('streamed_counts')
    return sum(counts)


def _count_partition(left: Sequence[int], right: Sequence[int], low: Optional[int], high: Optional[int],
                     left_array: Optional[np.ndarray]) -> int:
    slices = []
    for shift in right:
        start = 0 if low is None else bisect_left(left, low - shift)
        stop = len(left) if high is None else bisect_left(left, high - shift)
        if start < stop:
            slices.append((start, stop, shift))
    if not slices:
        return 0
    if left_array is not None:
        return int(np.unique(np.concatenate([left_array[start:stop] + shift for start, stop, shift in slices])).size)
    return len({left[index] + shift for start, stop, shift in slices for index in range(start, stop)})


def fits_pairwise(op: BinaryOp, left: Sequence[int], right: Sequence[int], budget: ComputeBudget) -> bool:
    """Whether `pairwise_values` can materialize the result within the budget."""
    pairs = len(left) * len(right)
    if budget.fits_int64(result_magnitude(op, left, right)):
        if op is BinaryOp.SUM and _use_indicator(left, right, budget):
            return True
        if budget.fits_memory(NUMPY_PAIR_BYTES * pairs):
            return True
    return budget.fits_memory(PYTHON_PAIR_BYTES * pairs)


def reduced_ratios(left: Sequence[int], right: Sequence[int], budget: ComputeBudget):
    """
    Distinct reduced fractions x / y for x in left, y in right (no zero in right).

    Returns a list of (numerator, denominator) pairs with denominator > 0, in no particular order.
    """
    pairs = len(left) * len(right)
    numerator_bound = max(abs(left[0]), abs(left[-1]))
    denominator_bound = max(abs(right[0]), abs(right[-1]))
    key_bound = numerator_bound * (denominator_bound + 1) + denominator_bound
    if budget.fits_int64(key_bound) and budget.fits_memory(3 * NUMPY_PAIR_BYTES * pairs):
        get_statistics_manager().increment('fast_path_numpy')
        numerators = np.asarray(left, dtype=np.int64)[:, None]
        denominators = np.asarray(right, dtype=np.int64)[None, :]
        divisor = np.gcd(numerators, denominators) * np.sign(denominators)
        reduced_numerators = (numerators // divisor).ravel()
        reduced_denominators = (denominators // divisor).ravel()
        _, first = np.unique(reduced_numerators * (denominator_bound + 1) + reduced_denominators, return_index=True)
        return list(zip(reduced_numerators[first].tolist(), reduced_denominators[first].tolist()))
    if budget.fits_memory(PYTHON_PAIR_BYTES * pairs):
        reduced = set()
        for x in left:
            for y in right:
                divisor = gcd(x, y) if y > 0 else -gcd(x, y)
                reduced.add((x // divisor, y // divisor))
        return list(reduced)
    raise ResourceLimit(f"ratio set of sets of sizes {len(left)} and {len(right)} does not fit the memory budget",
                        required=PYTHON_PAIR_BYTES * pairs, budget=budget.memory_budget_bytes)
