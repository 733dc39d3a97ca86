from bisect import bisect_right
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple
import numpy as np
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.error_management import InvalidClusterWidth
from Sumprod.Tool.bitset_management.compute_budget import ComputeBudget, resolve_budget
from Sumprod.Tool.set_core.finite_set import FiniteSet
from Sumprod.Tool.slope_geometry.decomposition import SlopeDecomposition, require_positive
from Sumprod.Tool.slope_geometry.dyadic import DyadicLevel, dyadic_select
from Sumprod.Tool.slope_geometry.line_sums import pair_family, resolve_fixed_points, fixed_point, \
    aa_plus_a_scaled, Point


class ClusterDiagnostic:
    """
    Counts for one full cluster of 2M slopes, split into V (first M) and W (last M).

    mu_actual >= union_size >= main_term - collision_sum must hold: the union of the M^2 line-pair
    families is a witnessed subset of the points counted by mu_actual.
    """

    def __init__(self, M: int, cluster_index: int, slopes_v: List[Fraction], slopes_w: List[Fraction],
                 mu_actual: int, main_term: int, collision_sum: int, union_size: int,
                 fixed_points: Dict[Fraction, Tuple[Fraction, Fraction]]):
        self.M = M
        self.cluster_index = cluster_index
        self.slopes_v = slopes_v
        self.slopes_w = slopes_w
        self.mu_actual = mu_actual
        self.main_term = main_term
        self.collision_sum = collision_sum
        self.union_size = union_size
        self.fixed_points = fixed_points

    @property
    def holds(self) -> bool:
        return self.mu_actual >= self.union_size >= self.main_term - self.collision_sum

    def __repr__(self):
        return (f"ClusterDiagnostic(M={self.M}, cluster={self.cluster_index}, mu={self.mu_actual}, "
                f"union={self.union_size}, main={self.main_term}, collisions={self.collision_sum}, "
                f"holds={self.holds})")


def count_between(values: Sequence[int], low: Fraction, high: Fraction) -> int:
    """
    #{(u, v) in values^2 : low < v / u < high} for positive sorted integers `values`.
    """
    p_low, q_low = low.numerator, low.denominator
    p_high, q_high = high.numerator, high.denominator
    top = values[-1]
    if top * max(p_low, p_high, q_low, q_high) < (1 << 62):
        array = np.asarray(values, dtype=np.int64)
        starts = np.searchsorted(array, (p_low * array) // q_low, side="right")
        stops = np.searchsorted(array, (p_high * array - 1) // q_high, side="right")
        return int(np.maximum(stops - starts, 0).sum())
    total = 0
    for u in values:
        start = bisect_right(values, (p_low * u) // q_low)
        stop = bisect_right(values, (p_high * u - 1) // q_high)
        total += max(0, stop - start)
    return total


def cluster_mu(A: FiniteSet, decomposition: SlopeDecomposition, M: int, fixed_points: Optional[Mapping] = None,
               level: Optional[DyadicLevel] = None, budget: ComputeBudget = None) -> List[ClusterDiagnostic]:
    """
    One diagnostic per full cluster of the dyadic slopes S (S_tau when unrefined), taken from
    the steepest slope downwards in runs of 2M.

    :raises InvalidClusterWidth: unless 2 <= 2M <= |S|
    """
    logger = get_logger()
    require_positive(A)
    budget = resolve_budget(budget)
    level = level if level is not None else dyadic_select(decomposition, refine=True, budget=budget)
    ordered = sorted(level.working_indices, reverse=True)
    width = 2 * M
    if width < 2 or width > len(ordered):
        raise InvalidClusterWidth(f"2M = {width} must lie in [2, {len(ordered)}]")

    fixed = resolve_fixed_points(decomposition, fixed_points)
    sums = aa_plus_a_scaled(decomposition, budget)
    diagnostics = []
    for cluster_index in range(len(ordered) // width):
        cluster = ordered[cluster_index * width:(cluster_index + 1) * width]
        v_indices, w_indices = cluster[:M], cluster[M:]
        families: Dict[Tuple[int, int], Set[Point]] = {
            (i, j): pair_family(decomposition, i, j, fixed[j]) for i in v_indices for j in w_indices}
        keys = list(families)
        collision_sum = sum(len(families[first] & families[second])
                            for first in keys for second in keys if first != second)
        union: Set[Point] = set().union(*families.values())
        low, high = decomposition.slope(cluster[-1]), decomposition.slope(cluster[0])
        diagnostic = ClusterDiagnostic(
            M=M, cluster_index=cluster_index,
            slopes_v=[decomposition.slope(index) for index in v_indices],
            slopes_w=[decomposition.slope(index) for index in w_indices],
            mu_actual=count_between(sums, low, high),
            main_term=level.tau * len(A) * M * M,
            collision_sum=collision_sum,
            union_size=len(union),
            fixed_points={decomposition.slope(index): tuple(Fraction(c, decomposition.scale)
                                                            for c in fixed_point(decomposition, index, fixed[index]))
                          for index in cluster})
        logger.debug(f"cluster_mu: {diagnostic}")
        diagnostics.append(diagnostic)
    return diagnostics
