"""
Vector sums of points on two lines through the origin.

Points are handled as integer pairs on the scale s^2, s the common denominator of A: if x and
lambda x are in A then s^2 (x + a x') and s^2 (lambda x + a lambda' x') are integers.
"""
from fractions import Fraction
from math import isqrt
from typing import Dict, FrozenSet, Mapping, Optional, Set, Tuple
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.error_management import InvalidPair, InvalidQuadruple
from Sumprod.Utils.configuration_management.enums import BinaryOp, EnergyKind
from Sumprod.Tool.bitset_management.compute_budget import ComputeBudget, resolve_budget
from Sumprod.Tool.bitset_management.integer_bitset import pairwise_values
from Sumprod.Tool.set_core.finite_set import FiniteSet
from Sumprod.Tool.set_core.set_operations import aa_plus_a_size
from Sumprod.Tool.set_core.energy import energy
from Sumprod.Tool.slope_geometry.decomposition import SlopeDecomposition, slope_decomposition, require_positive
from Sumprod.Tool.slope_geometry.dyadic import product_set_size

Point = Tuple[int, int]


def default_fixed_points(decomposition: SlopeDecomposition) -> Dict[int, int]:
    """Smallest x on every line, as scaled integers keyed by line index."""
    return {index: int(decomposition.x_values[decomposition.offsets[index]]) for index in range(len(decomposition))}


def resolve_fixed_points(decomposition: SlopeDecomposition, overrides: Optional[Mapping] = None,
                         error=InvalidPair) -> Dict[int, int]:
    """
    Fixed point x-coordinates per line index; `overrides` maps a slope to an element x of A_lambda.
    """
    fixed = default_fixed_points(decomposition)
    for slope, x in (overrides or {}).items():
        index = line_index(decomposition, slope, error)
        scaled = Fraction(x) * decomposition.scale
        if scaled.denominator != 1 or scaled.numerator not in decomposition.line_ints(index):
            raise error(f"{x} is not on the line of slope {slope}")
        fixed[index] = scaled.numerator
    return fixed


def line_index(decomposition: SlopeDecomposition, slope, error=InvalidPair) -> int:
    try:
        return decomposition.index(slope)
    except ValueError:
        raise error(f"{slope} is not in A/A")


def fixed_point(decomposition: SlopeDecomposition, index: int, x: int) -> Point:
    return x, x * int(decomposition.numerators[index]) // int(decomposition.denominators[index])


def pair_family(decomposition: SlopeDecomposition, index: int, fixed_index: int, fixed_x: int) -> Set[Point]:
    """
    The points (x, lambda x) + a (a', lambda' a') for x in A_lambda, a in A, with (a', lambda' a')
    the fixed point of the line `fixed_index`.
    """
    scale = decomposition.scale
    fixed_x, fixed_y = fixed_point(decomposition, fixed_index, fixed_x)
    a_values = decomposition.base_set.scaled()[1]
    return {(scale * x + a * fixed_x, scale * y + a * fixed_y)
            for x, y in decomposition.line_points(index) for a in a_values}


def line_pair_sum(A: FiniteSet, slope, slope_prime, fixed_point_x,
                  decomposition: SlopeDecomposition = None) -> FrozenSet[Tuple[Fraction, Fraction]]:
    """
    {(x + a a', lambda x + a lambda' a') : x in A_lambda, a in A} with a' = fixed_point_x on the
    line of slope lambda'. The |A_lambda| |A| points all lie strictly between the two lines.

    :raises InvalidPair: equal slopes, a slope outside A/A, or a fixed point off the lambda' line
    """
    require_positive(A)
    decomposition = decomposition if decomposition is not None else slope_decomposition(A)
    if Fraction(slope) == Fraction(slope_prime):
        raise InvalidPair("the two slopes must differ")
    index = line_index(decomposition, slope)
    fixed_index = line_index(decomposition, slope_prime)
    fixed_x = resolve_fixed_points(decomposition, {slope_prime: fixed_point_x})[fixed_index]
    square = decomposition.scale ** 2
    return frozenset((Fraction(u, square), Fraction(v, square))
                     for u, v in pair_family(decomposition, index, fixed_index, fixed_x))


def aa_plus_a_scaled(decomposition: SlopeDecomposition, budget: ComputeBudget) -> list:
    """Sorted elements of AA+A on the scale s^2."""
    scale, ints = decomposition.base_set.scaled()
    products = pairwise_values(BinaryOp.PRODUCT, ints, ints, budget)
    return pairwise_values(BinaryOp.SUM, products, [scale * value for value in ints], budget)


def balog_chain(A: FiniteSet, verify_disjoint: bool = False, decomposition: SlopeDecomposition = None,
                budget: ComputeBudget = None) -> Tuple[int, int, bool]:
    """
    (|AA+A|^2, sum over consecutive slopes of |A_{lambda_i}| |A A_{lambda_{i+1}}|, holds).

    With `verify_disjoint` the families A_{lambda_i} + A_{lambda_{i+1}} * Delta(A) are built and
    checked to be pairwise disjoint, of the expected sizes, and inside (AA+A)^2.
    """
    logger = get_logger()
    require_positive(A)
    budget = resolve_budget(budget)
    decomposition = decomposition if decomposition is not None else slope_decomposition(A, budget)
    lhs = aa_plus_a_size(A, budget) ** 2
    product_sizes = [product_set_size(decomposition, index, budget) for index in range(1, len(decomposition))]
    rhs = sum(decomposition.mass(index) * product_sizes[index] for index in range(len(decomposition) - 1))
    holds = rhs <= lhs

    if verify_disjoint and len(decomposition) > 1:
        scale, a_values = A.scaled()
        members = set(aa_plus_a_scaled(decomposition, budget))
        seen: Set[Point] = set()
        for index in range(len(decomposition) - 1):
            family = {(scale * x + a * next_x, scale * y + a * next_y)
                      for x, y in decomposition.line_points(index)
                      for next_x, next_y in decomposition.line_points(index + 1) for a in a_values}
            expected = decomposition.mass(index) * product_sizes[index]
            inside = all(u in members and v in members for u, v in family)
            if len(family) != expected or not inside or not seen.isdisjoint(family):
                logger.warning(f"balog_chain: family between slopes {decomposition.slope(index)} and "
                               f"{decomposition.slope(index + 1)} failed verification")
                holds = False
                break
            seen |= family
    logger.debug(f"balog_chain: lhs={lhs}, rhs={rhs}, holds={holds}")
    return lhs, rhs, holds


class CollisionResult:
    """
    Collision count E = |F(l1, l2) & F(l3, l4)| with its Cauchy-Schwarz bound, kept squared for
    exact comparison.
    """

    def __init__(self, collisions: int, bound_squared: Fraction, case: str):
        self.collisions = collisions
        self.bound_squared = bound_squared
        self.case = case

    @property
    def bound(self) -> float:
        return isqrt(int(self.bound_squared * 10 ** 12)) / 10 ** 6

    @property
    def holds(self) -> bool:
        return self.collisions ** 2 <= self.bound_squared

    def __repr__(self):
        return f"CollisionResult(E={self.collisions}, bound={self.bound:.6f}, case={self.case}, holds={self.holds})"


def collision_count(A: FiniteSet, decomposition: SlopeDecomposition, slope_1, slope_2, slope_3, slope_4,
                    fixed_points: Optional[Mapping] = None, budget: ComputeBudget = None,
                    families: Optional[Dict[Tuple[int, int], Set[Point]]] = None) -> CollisionResult:
    """
    Size of F(l1, l2) & F(l3, l4) where F(l, l') = A_l + (a_l', l' a_l') * Delta(A).

    Bounds: for l4 != l2, E^2 <= |A_l1| E+(A, alpha A_l3) with alpha = (l4 - l3) / (a_l2 (l2 - l4));
    for l4 == l2, E^2 <= |A| E+(A, alpha A_l1) with alpha = (l1 - l3) / (a_l2 (l3 - l2)).

    :raises InvalidQuadruple: l1 = l2, l3 = l4, (l1, l2) = (l3, l4), a slope outside A/A,
        or l4 in {l1, l3} while l4 != l2
    """
    slopes = [Fraction(value) for value in (slope_1, slope_2, slope_3, slope_4)]
    l1, l2, l3, l4 = slopes
    if l1 == l2 or l3 == l4 or (l1, l2) == (l3, l4):
        raise InvalidQuadruple(f"degenerate quadruple {tuple(str(s) for s in slopes)}")
    if l4 != l2 and l4 in (l1, l3):
        raise InvalidQuadruple(f"slope {l4} repeats l1 or l3 while differing from l2")
    budget = resolve_budget(budget)
    i1, i2, i3, i4 = (line_index(decomposition, value, InvalidQuadruple) for value in slopes)
    fixed = resolve_fixed_points(decomposition, fixed_points, InvalidQuadruple)
    families = families if families is not None else {}
    for key in ((i1, i2), (i3, i4)):
        if key not in families:
            families[key] = pair_family(decomposition, key[0], key[1], fixed[key[1]])
    collisions = len(families[(i1, i2)] & families[(i3, i4)])

    a_l2 = Fraction(fixed[i2], decomposition.scale)
    if l4 != l2:
        alpha = (l4 - l3) / (a_l2 * (l2 - l4))
        bound_squared = decomposition.mass(i1) * energy(EnergyKind.ADDITIVE, A, decomposition.line(i3).dilate(alpha),
                                                        budget)
        case = "distinct"
    else:
        alpha = (l1 - l3) / (a_l2 * (l3 - l2))
        bound_squared = len(A) * energy(EnergyKind.ADDITIVE, A, decomposition.line(i1).dilate(alpha), budget)
        case = "shared"
    return CollisionResult(collisions, Fraction(bound_squared), case)
