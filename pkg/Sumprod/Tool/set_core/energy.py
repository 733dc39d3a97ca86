from collections import Counter
from fractions import Fraction
from math import isqrt
from typing import Optional, Union
import numpy as np
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.error_management import ZeroInMultiplicativeEnergy, ResourceLimit
from Sumprod.Utils.configuration_management.enums import BinaryOp, EnergyKind
from Sumprod.Tool.bitset_management.compute_budget import ComputeBudget, resolve_budget, NUMPY_PAIR_BYTES, \
    PYTHON_PAIR_BYTES
from Sumprod.Tool.bitset_management.integer_bitset import outer_table, result_magnitude
from Sumprod.Tool.set_core.finite_set import FiniteSet
from Sumprod.Tool.set_core.set_operations import binary_op_size, common_sum_operands


class EnergyReport:
    """
    Energies of (A, B) with the Cauchy-Schwarz lower bounds and the trivial upper bound.
    With 0 in A or B the multiplicative fields are None and only the additive half is checked.

    Lower bounds are |A|^2 |B|^2 / |A o B| for o in {+, -, *, /}; with B = A they read |A|^4 / |A o A|.
    The upper bound min{|A|^2|B|, |A||B|^2, (|A||B|)^{3/2}} is kept squared so the comparison stays exact.
    """

    def __init__(self, size_a: int, size_b: int, e_plus: int, e_mult: Optional[int], additive_constant: Fraction,
                 sum_bound: Fraction, difference_bound: Fraction, product_bound: Optional[Fraction],
                 ratio_bound: Optional[Fraction],
                 upper_bound_squared: int):
        self.size_a = size_a
        self.size_b = size_b
        self.e_plus = e_plus
        self.e_mult = e_mult
        self.additive_constant = additive_constant
        self.sum_bound = sum_bound
        self.difference_bound = difference_bound
        self.product_bound = product_bound
        self.ratio_bound = ratio_bound
        self.upper_bound_squared = upper_bound_squared

    @property
    def upper_bound(self) -> float:
        return isqrt(self.upper_bound_squared * 10 ** 12) / 10 ** 6

    @property
    def has_multiplicative(self) -> bool:
        return self.e_mult is not None

    @property
    def lower_bounds_hold(self) -> bool:
        trivial = self.size_a * self.size_b
        additive = self.e_plus >= max(self.sum_bound, self.difference_bound, trivial)
        if not self.has_multiplicative:
            return additive
        return additive and self.e_mult >= max(self.product_bound, self.ratio_bound, trivial)

    @property
    def upper_bounds_hold(self) -> bool:
        additive = self.e_plus ** 2 <= self.upper_bound_squared
        if not self.has_multiplicative:
            return additive
        return additive and self.e_mult ** 2 <= self.upper_bound_squared

    def to_text(self) -> str:
        rows = [("size_a", self.size_a), ("size_b", self.size_b), ("e_plus", self.e_plus), ("e_mult", self.e_mult),
                ("K", self.additive_constant), ("bound_sum", self.sum_bound),
                ("bound_difference", self.difference_bound), ("bound_product", self.product_bound),
                ("bound_ratio", self.ratio_bound), ("upper_bound", f"{self.upper_bound:.6f}"),
                ("lower_bounds_hold", self.lower_bounds_hold), ("upper_bounds_hold", self.upper_bounds_hold)]
        return "\n".join(f"{key}={'' if value is None else value}" for key, value in rows)

    def __repr__(self):
        return f"EnergyReport(|A|={self.size_a}, |B|={self.size_b}, E+={self.e_plus}, E*={self.e_mult})"


def _representation_energy(op: BinaryOp, left, right, budget: ComputeBudget) -> int:
    pairs = len(left) * len(right)
    if budget.fits_int64(result_magnitude(op, left, right)) and budget.fits_memory(NUMPY_PAIR_BYTES * pairs):
        _, counts = np.unique(outer_table(op, left, right), return_counts=True)
        counts = counts.astype(np.int64)
        return int(np.dot(counts, counts))
    if not budget.fits_memory(PYTHON_PAIR_BYTES * pairs):
        raise ResourceLimit(f"{op.value} energy of sets of sizes {len(left)} and {len(right)} does not fit "
                            f"the memory budget", required=PYTHON_PAIR_BYTES * pairs,
                            budget=budget.memory_budget_bytes)
    if op is BinaryOp.SUM:
        representations = Counter(a + b for a in left for b in right)
    else:
        representations = Counter(a * b for a in left for b in right)
    return sum(count * count for count in representations.values())


def energy(kind: Union[EnergyKind, str], A: FiniteSet, B: FiniteSet = None, budget: ComputeBudget = None) -> int:
    """
    Sum of squared representation counts of A + B (additive) or AB (multiplicative).

    :raises ZeroInMultiplicativeEnergy: multiplicative energy with 0 in A or B
    """
    kind = kind if isinstance(kind, EnergyKind) else EnergyKind(kind)
    B = A if B is None else B
    budget = resolve_budget(budget)
    if kind is EnergyKind.ADDITIVE:
        _, left, right = common_sum_operands(A, B)
        return _representation_energy(BinaryOp.SUM, left, right, budget)
    if 0 in A or 0 in B:
        raise ZeroInMultiplicativeEnergy("multiplicative energy is not defined with 0 in the set")
    # a common scale multiplies every product by the same constant
    return _representation_energy(BinaryOp.PRODUCT, A.scaled()[1], B.scaled()[1], budget)


def energy_bounds_report(A: FiniteSet, B: FiniteSet = None, budget: ComputeBudget = None) -> EnergyReport:
    """
    Both energies of (A, B) (B defaults to A) with their classical bounds. When 0 is in A or B
    only the additive energy and bounds are computed.
    """
    logger = get_logger()
    B = A if B is None else B
    budget = resolve_budget(budget)
    size_a, size_b = len(A), len(B)
    e_plus = energy(EnergyKind.ADDITIVE, A, B, budget)
    multiplicative = 0 not in A and 0 not in B
    e_mult = energy(EnergyKind.MULTIPLICATIVE, A, B, budget) if multiplicative else None
    self_e_plus = e_plus if B is A or B == A else energy(EnergyKind.ADDITIVE, A, A, budget)

    pair_weight = size_a ** 2 * size_b ** 2
    product_bound = ratio_bound = None
    if multiplicative:
        product_bound = Fraction(pair_weight, binary_op_size(BinaryOp.PRODUCT, A, B, budget))
        ratio_bound = Fraction(pair_weight, binary_op_size(BinaryOp.RATIO, A, B, budget))
    report = EnergyReport(
        size_a=size_a, size_b=size_b, e_plus=e_plus, e_mult=e_mult,
        additive_constant=Fraction(size_a ** 3, self_e_plus),
        sum_bound=Fraction(pair_weight, binary_op_size(BinaryOp.SUM, A, B, budget)),
        difference_bound=Fraction(pair_weight, binary_op_size(BinaryOp.DIFFERENCE, A, B, budget)),
        product_bound=product_bound, ratio_bound=ratio_bound,
        upper_bound_squared=min((size_a ** 2 * size_b) ** 2, (size_a * size_b ** 2) ** 2, (size_a * size_b) ** 3))
    logger.debug(f"energy report: {report}")
    return report
