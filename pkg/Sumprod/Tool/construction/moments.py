"""
Exact checks behind the residue-class estimate: the exponential moment of 2^g over one
period, the Markov bound on residues with large g, superadditivity of g over f and the
periodicity of both functions.
"""
from fractions import Fraction
from math import floor
from typing import Tuple
import numpy as np
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.error_management import ResourceLimit
from Sumprod.Utils.configuration_management import knob_value
from Sumprod.Tool.construction.arithmetic_functions import primes_below, primorial, f_values, g_values, \
    selection_threshold, moment_threshold
from Sumprod.Tool.construction.construction import residue_hit_mask


def _moment_block(y: int) -> int:
    q = primorial(y)
    block = q * q
    limit = knob_value('moment_block_limit')
    if block > limit:
        raise ResourceLimit(f"q^2 = {block} for y = {y} exceeds the enumeration limit", required=block, budget=limit,
                            advice="raise moment_block_limit")
    return block


def product_formula(y: int) -> Fraction:
    """prod over p < y of (1 + 1/p + 2/p^2)."""
    result = Fraction(1)
    for p in primes_below(y):
        result *= Fraction(p * p + p + 2, p * p)
    return result


def _g_block(y: int, block: int) -> np.ndarray:
    return g_values(np.arange(1, block + 1, dtype=np.int64), y)


def exponential_moment_check(y: int) -> Tuple[Fraction, Fraction, bool]:
    """
    (product_formula, block_average, equal) with block_average the mean of 2^g over x = 1..q^2.

    :raises ResourceLimit: when q^2 exceeds moment_block_limit
    """
    block = _moment_block(y)
    frequencies = np.bincount(_g_block(y, block))
    total = sum(int(count) << value for value, count in enumerate(frequencies.tolist()))
    expected = product_formula(y)
    average = Fraction(total, block)
    get_logger().debug(f"exponential moment y={y}: formula {expected}, block average {average}")
    return expected, average, expected == average


def markov_residue_bound(y: int, log_base: str = None) -> Tuple[float, int, Fraction, bool]:
    """
    (T, classes_above, markov_bound, holds) for T = 2 loglog y - 4 sqrt(loglog y).

    With k the smallest integer above T, {g > T} = {g >= k}, so Markov's inequality on 2^g gives
    classes_above <= q^2 * product_formula / 2^k. `holds` also requires every residue of a
    product of two residues with f > theta to have g > T.

    :raises ResourceLimit: when q^2 exceeds moment_block_limit
    """
    logger = get_logger()
    log_base = log_base if log_base is not None else knob_value('log_base')
    block = _moment_block(y)
    threshold = moment_threshold(y, log_base)
    k = floor(threshold) + 1
    g = _g_block(y, block)
    classes_above = int(np.count_nonzero(g >= k))
    bound = block * product_formula(y) * Fraction(2) ** -k

    if int(g.min()) >= k:
        inclusion = True
    else:
        xs = np.arange(1, block + 1, dtype=np.int64)
        qualifying = xs[f_values(xs, y) > selection_threshold(y, log_base)] % block
        if len(qualifying) == 0:
            inclusion = True
        else:
            hit = residue_hit_mask(qualifying.tolist(), block)
            # residue 0 is represented by x = q^2, the last entry of the block
            g_by_residue = np.roll(g, 1)
            inclusion = bool(np.all(g_by_residue[hit] >= k))
    holds = classes_above <= bound and inclusion
    logger.debug(f"markov residue bound y={y}: T={threshold:.6f}, above={classes_above}/{block}, bound={bound}, "
                 f"inclusion={inclusion}")
    return threshold, classes_above, bound, holds


def superadditivity_check(y: int, limit: int) -> Tuple[int, int]:
    """(violations, checked) of g(ab) >= f(a) + f(b) over 1 <= a, b <= limit."""
    xs = np.arange(1, limit + 1, dtype=np.int64)
    f = f_values(xs, y)
    g_of_products = g_values(np.arange(0, limit * limit + 1, dtype=np.int64), y)
    violations = 0
    for a in range(1, limit + 1):
        violations += int(np.count_nonzero(g_of_products[a * xs] < f[a - 1] + f))
    return violations, limit * limit


def periodicity_check(y: int) -> bool:
    """f(x) = f(x + q) and g(x) = g(x + q^2) over two consecutive periods."""
    q = primorial(y)
    block = _moment_block(y)
    f = f_values(np.arange(1, 2 * q + 1, dtype=np.int64), y)
    g = g_values(np.arange(1, 2 * block + 1, dtype=np.int64), y)
    return bool(np.array_equal(f[:q], f[q:]) and np.array_equal(g[:block], g[block:]))
