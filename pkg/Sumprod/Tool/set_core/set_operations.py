from fractions import Fraction
from math import lcm
from typing import Optional, Sequence, Tuple, Union
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.error_management import DivisorZero, NotWellSpaced, Degenerate, SignRestriction
from Sumprod.Utils.configuration_management.enums import BinaryOp
from Sumprod.Tool.bitset_management.compute_budget import ComputeBudget, resolve_budget
from Sumprod.Tool.bitset_management.integer_bitset import pairwise_values, sum_count, fits_pairwise, reduced_ratios
from Sumprod.Tool.set_core.finite_set import FiniteSet


class CombineResult:
    """
    Outcome of `combine`: the exact cardinality always, the elements only when they were
    materialized (`streamed` tells whether the count came from the partitioned counter).
    """

    def __init__(self, cardinality: int, elements: Optional[FiniteSet], streamed: bool):
        self.cardinality = cardinality
        self.elements = elements
        self.streamed = streamed

    def __repr__(self):
        return f"CombineResult(cardinality={self.cardinality}, materialized={self.elements is not None}, " \
               f"streamed={self.streamed})"


class SignDichotomyReport:

    def __init__(self, positive_size: int, negative_size: int, chosen: str, aa_plus_a_positive: Optional[int],
                 aa_minus_a_negative: Optional[int], identity_holds: Optional[bool]):
        self.positive_size = positive_size
        self.negative_size = negative_size
        self.chosen = chosen
        self.aa_plus_a_positive = aa_plus_a_positive
        self.aa_minus_a_negative = aa_minus_a_negative
        self.identity_holds = identity_holds

    def __repr__(self):
        return (f"SignDichotomyReport(positive={self.positive_size}, negative={self.negative_size}, "
                f"chosen={self.chosen}, |AA+A| positive part={self.aa_plus_a_positive}, "
                f"|AA-A| negative part={self.aa_minus_a_negative}, identity={self.identity_holds})")


def _as_op(op: Union[BinaryOp, str]) -> BinaryOp:
    return op if isinstance(op, BinaryOp) else BinaryOp(op)


def _rescale(values: Sequence[int], factor: int) -> Sequence[int]:
    return values if factor == 1 else tuple(value * factor for value in values)


def common_sum_operands(A: FiniteSet, B: FiniteSet):
    scale_a, ints_a = A.scaled()
    scale_b, ints_b = B.scaled()
    scale = lcm(scale_a, scale_b)
    return scale, _rescale(ints_a, scale // scale_a), _rescale(ints_b, scale // scale_b)


def _product_values(A: FiniteSet, B: FiniteSet, budget: ComputeBudget) -> Tuple[int, list]:
    scale_a, ints_a = A.scaled()
    scale_b, ints_b = B.scaled()
    return scale_a * scale_b, pairwise_values(BinaryOp.PRODUCT, ints_a, ints_b, budget)


def _ratio_fractions(A: FiniteSet, B: FiniteSet, budget: ComputeBudget):
    if 0 in B:
        raise DivisorZero("ratio set with 0 in the divisor set")
    scale_a, ints_a = A.scaled()
    scale_b, ints_b = B.scaled()
    return scale_a, scale_b, reduced_ratios(ints_a, ints_b, budget)


def binary_op(op: Union[BinaryOp, str], A: FiniteSet, B: FiniteSet, budget: ComputeBudget = None) -> FiniteSet:
    """
    Exact set {a op b : a in A, b in B}.

    Rational inputs are brought to a common denominator and handled as integers, so the
    integer fast path and the rational path produce the same elements.

    :raises DivisorZero: for a ratio set with 0 in B
    :raises ResourceLimit: when the pairwise table does not fit the memory budget
    """
    op = _as_op(op)
    budget = resolve_budget(budget)
    if op is BinaryOp.SUM:
        scale, left, right = common_sum_operands(A, B)
        return FiniteSet.from_scaled(scale, pairwise_values(BinaryOp.SUM, left, right, budget))
    if op is BinaryOp.DIFFERENCE:
        return binary_op(BinaryOp.SUM, A, B.negate(), budget)
    if op is BinaryOp.PRODUCT:
        scale, values = _product_values(A, B, budget)
        return FiniteSet.from_scaled(scale, values)
    scale_a, scale_b, ratios = _ratio_fractions(A, B, budget)
    return FiniteSet(tuple(sorted(Fraction(x * scale_b, y * scale_a) for x, y in ratios)))


def binary_op_size(op: Union[BinaryOp, str], A: FiniteSet, B: FiniteSet, budget: ComputeBudget = None) -> int:
    """|A op B| without building the elements; sums past the memory budget are counted in partitions."""
    op = _as_op(op)
    budget = resolve_budget(budget)
    if op is BinaryOp.SUM:
        _, left, right = common_sum_operands(A, B)
        return sum_count(left, right, budget)[0]
    if op is BinaryOp.DIFFERENCE:
        return binary_op_size(BinaryOp.SUM, A, B.negate(), budget)
    if op is BinaryOp.PRODUCT:
        return len(_product_values(A, B, budget)[1])
    return len(_ratio_fractions(A, B, budget)[2])


def combine(A: FiniteSet, B: FiniteSet, C: FiniteSet, materialize: bool = True,
            budget: ComputeBudget = None) -> CombineResult:
    """
    The set AB + C = {ab + c}.

    The product set is built and deduplicated first, then shifted by C. When the materialized
    result would exceed the memory budget (or `materialize` is False) only the exact
    cardinality is produced.

    :raises ResourceLimit: over budget with streamed counting disabled
    """
    logger = get_logger()
    budget = resolve_budget(budget)
    product_scale, product_values = _product_values(A, B, budget)
    shift_scale, shift_values = C.scaled()
    scale = lcm(product_scale, shift_scale)
    left = _rescale(product_values, scale // product_scale)
    right = _rescale(shift_values, scale // shift_scale)
    logger.debug(f"combine: |AB| = {len(left)}, |C| = {len(right)}, scale {scale}")

    if materialize and fits_pairwise(BinaryOp.SUM, left, right, budget):
        values = pairwise_values(BinaryOp.SUM, left, right, budget)
        return CombineResult(len(values), FiniteSet.from_scaled(scale, values), False)
    cardinality, streamed = sum_count(left, right, budget)
    if materialize:
        logger.debug(f"combine: result of {cardinality} elements kept as a count only")
    return CombineResult(cardinality, None, streamed)


def aa_plus_a_size(A: FiniteSet, budget: ComputeBudget = None) -> int:
    return combine(A, A, A, materialize=False, budget=budget).cardinality


def ruzsa_ratio(A: FiniteSet, B: FiniteSet, C: FiniteSet, budget: ComputeBudget = None) -> Fraction:
    """(|A+C| |B+C|) / (|A+B| |C|), at least 1 by the Ruzsa triangle inequality."""
    budget = resolve_budget(budget)
    numerator = binary_op_size(BinaryOp.SUM, A, C, budget) * binary_op_size(BinaryOp.SUM, B, C, budget)
    return Fraction(numerator, binary_op_size(BinaryOp.SUM, A, B, budget) * len(C))


def max_dilate_identity(A: FiniteSet, budget: ComputeBudget = None) -> Tuple[int, bool]:
    """
    Size of a_max * A + A and whether it equals |A|^2.

    A must be positive and well spaced (gaps of at least 1), which covers sets of positive integers.

    :raises SignRestriction: if A has an element <= 0
    :raises NotWellSpaced: if two elements are closer than 1
    """
    if not A.is_positive:
        raise SignRestriction(f"max_dilate_identity needs positive elements, got minimum {A.min}")
    gap = A.min_gap()
    if gap is not None and gap < 1:
        raise NotWellSpaced(f"elements closer than 1 (minimum gap {gap})")
    size = binary_op_size(BinaryOp.SUM, A.dilate(A.max), A, budget)
    return size, size == len(A) ** 2


def sign_dichotomy(A: FiniteSet, budget: ComputeBudget = None) -> SignDichotomyReport:
    """
    Split A into its positive and negative parts. The positive part is measured through
    |AA+A|, the negative part N through |NN-N|, which equals |(-N)(-N)+(-N)|.

    :raises Degenerate: for A = {0}
    """
    budget = resolve_budget(budget)
    positive = [value for value in A if value > 0]
    negative = [value for value in A if value < 0]
    if not positive and not negative:
        raise Degenerate("the set {0} has no signed part")

    aa_plus_a_positive = None
    if positive:
        aa_plus_a_positive = aa_plus_a_size(FiniteSet(tuple(positive)), budget)

    aa_minus_a_negative = None
    identity_holds = None
    if negative:
        negative_part = FiniteSet(tuple(negative))
        aa_minus_a_negative = combine(negative_part, negative_part, negative_part.negate(),
                                      materialize=False, budget=budget).cardinality
        mirrored = negative_part.negate()
        identity_holds = aa_minus_a_negative == aa_plus_a_size(mirrored, budget)

    chosen = "positive" if len(positive) >= len(negative) else "negative"
    return SignDichotomyReport(len(positive), len(negative), chosen, aa_plus_a_positive, aa_minus_a_negative,
                               identity_holds)
