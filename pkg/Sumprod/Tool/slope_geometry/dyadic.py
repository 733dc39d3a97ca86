from fractions import Fraction
from math import log2
from typing import Dict, List, Optional
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.error_management import Degenerate
from Sumprod.Utils.configuration_management.enums import BinaryOp
from Sumprod.Tool.bitset_management.compute_budget import ComputeBudget, resolve_budget
from Sumprod.Tool.bitset_management.integer_bitset import pairwise_values
from Sumprod.Tool.slope_geometry.decomposition import SlopeDecomposition


def dyadic_floor(value: int) -> int:
    """Largest power of two not exceeding value (value >= 1)."""
    return 1 << (value.bit_length() - 1)


class DyadicLevel:
    """
    The dyadic class S_tau = {lambda : tau <= |A_lambda| < 2 tau} of largest mass, optionally refined
    to S = {lambda in S_tau : t0 |A| <= |A A_lambda| < 2 t0 |A|}.

    Slopes are kept as indices into `decomposition`, in increasing slope order.
    """

    def __init__(self, decomposition: SlopeDecomposition, tau: int, tau_indices: List[int], mass: int,
                 t0: Optional[int] = None, refined_indices: Optional[List[int]] = None,
                 product_sizes: Optional[Dict[int, int]] = None):
        self.decomposition = decomposition
        self.tau = tau
        self.tau_indices = tau_indices
        self.mass = mass
        self.t0 = t0
        self.refined_indices = refined_indices
        self.product_sizes = product_sizes or {}

    @property
    def is_refined(self) -> bool:
        return self.refined_indices is not None

    @property
    def S_tau(self) -> List[Fraction]:
        return [self.decomposition.slope(index) for index in self.tau_indices]

    @property
    def S(self) -> List[Fraction]:
        """The refined slopes, or S_tau when no refinement was made."""
        indices = self.refined_indices if self.is_refined else self.tau_indices
        return [self.decomposition.slope(index) for index in indices]

    @property
    def working_indices(self) -> List[int]:
        return self.refined_indices if self.is_refined else self.tau_indices

    @property
    def guarantee_holds(self) -> bool:
        """mass >= |A|^2 / (2 log2 |A|)."""
        size = len(self.decomposition.base_set)
        return self.mass * 2 * log2(size) >= size * size

    def __repr__(self):
        refined = f", t0={self.t0}, |S|={len(self.refined_indices)}" if self.is_refined else ""
        return f"DyadicLevel(tau={self.tau}, |S_tau|={len(self.tau_indices)}, mass={self.mass}{refined})"


def product_set_size(decomposition: SlopeDecomposition, index: int, budget: ComputeBudget) -> int:
    """|A * A_lambda| for the line at `index`."""
    return len(pairwise_values(BinaryOp.PRODUCT, decomposition.base_set.scaled()[1], decomposition.line_ints(index),
                               budget))


def dyadic_select(decomposition: SlopeDecomposition, refine: bool = True, budget: ComputeBudget = None) -> DyadicLevel:
    """
    Pick the dyadic level tau of largest total mass (ties go to the larger tau); with `refine`,
    split S_tau by the dyadic size t of |A A_lambda| / |A| and keep the most populated class
    (ties go to the smaller t).

    :raises Degenerate: for |A| < 2
    """
    logger = get_logger()
    size = len(decomposition.base_set)
    if size < 2:
        raise Degenerate("dyadic selection needs |A| >= 2")
    budget = resolve_budget(budget)

    mass_by_tau: Dict[int, int] = {}
    indices_by_tau: Dict[int, List[int]] = {}
    for index, mass in enumerate(decomposition.masses.tolist()):
        tau = dyadic_floor(mass)
        mass_by_tau[tau] = mass_by_tau.get(tau, 0) + mass
        indices_by_tau.setdefault(tau, []).append(index)
    tau = max(mass_by_tau, key=lambda level: (mass_by_tau[level], level))
    level = DyadicLevel(decomposition, tau, indices_by_tau[tau], mass_by_tau[tau])
    logger.debug(f"dyadic_select: masses by tau {dict(sorted(mass_by_tau.items()))}, selected tau={tau}")

    if refine:
        product_sizes = {index: product_set_size(decomposition, index, budget) for index in level.tau_indices}
        indices_by_t: Dict[int, List[int]] = {}
        for index, product_size in product_sizes.items():
            indices_by_t.setdefault(dyadic_floor(product_size // size), []).append(index)
        t0 = max(indices_by_t, key=lambda t: (len(indices_by_t[t]), -t))
        level.t0 = t0
        level.refined_indices = indices_by_t[t0]
        level.product_sizes = product_sizes
        class_sizes = {t: len(indices) for t, indices in sorted(indices_by_t.items())}
        logger.debug(f"dyadic_select: refined classes {class_sizes}, selected t0={t0}")
    return level
