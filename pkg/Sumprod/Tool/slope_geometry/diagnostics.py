from fractions import Fraction
from math import isqrt, sqrt
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.error_management import SignRestriction
from Sumprod.Utils.configuration_management.enums import BinaryOp, EnergyKind
from Sumprod.Tool.bitset_management.compute_budget import ComputeBudget, resolve_budget
from Sumprod.Tool.set_core.finite_set import FiniteSet
from Sumprod.Tool.set_core.set_operations import binary_op, binary_op_size
from Sumprod.Tool.set_core.energy import energy
from Sumprod.Tool.slope_geometry.decomposition import require_positive


class BigratioReport:
    """
    Growth of AX + AX against |X| |A/A|^{1/2}, with the additive constant K = |X|^3 / E+(X).
    The ratios are reported only; `floor_holds` is the constant-free chain
    |AX+AX| >= |X+X| >= |X| K.
    """

    def __init__(self, size_x: int, ax_ax: int, x_plus_x: int, e_plus_x: int, ratio_set: int):
        self.size_x = size_x
        self.ax_ax = ax_ax
        self.x_plus_x = x_plus_x
        self.e_plus_x = e_plus_x
        self.ratio_set = ratio_set

    @property
    def K(self) -> Fraction:
        return Fraction(self.size_x ** 3, self.e_plus_x)

    @property
    def ratio_balog(self) -> float:
        return self.ax_ax / (self.size_x * sqrt(self.ratio_set))

    @property
    def ratio_bigratio(self) -> float:
        return self.ratio_balog / float(self.K) ** 0.125

    @property
    def cluster_width(self) -> int:
        """floor((|X|^{3/2} / (8 E+(X)^{1/2}))^{1/2})"""
        return isqrt(isqrt(self.size_x ** 3 // (64 * self.e_plus_x)))

    @property
    def floor_holds(self) -> bool:
        return self.ax_ax >= self.x_plus_x and self.x_plus_x * self.e_plus_x >= self.size_x ** 4

    def to_text(self) -> str:
        rows = [("|X|", self.size_x), ("|AX+AX|", self.ax_ax), ("|X+X|", self.x_plus_x), ("E+(X)", self.e_plus_x),
                ("K", self.K), ("|A/A|", self.ratio_set), ("ratio_balog", f"{self.ratio_balog:.6f}"),
                ("ratio_bigratio", f"{self.ratio_bigratio:.6f}"), ("M*", self.cluster_width),
                ("floor_holds", self.floor_holds)]
        return "\n".join(f"{key}={value}" for key, value in rows)

    def __repr__(self):
        return (f"BigratioReport(|AX+AX|={self.ax_ax}, K={self.K}, |A/A|={self.ratio_set}, "
                f"ratio_balog={self.ratio_balog:.3f}, ratio_bigratio={self.ratio_bigratio:.3f})")


def bigratio_diagnostic(A: FiniteSet, X: FiniteSet = None, budget: ComputeBudget = None) -> BigratioReport:
    """
    :param A: strictly positive set
    :param X: strictly positive set, A itself when omitted
    """
    logger = get_logger()
    X = A if X is None else X
    require_positive(A)
    if not X.is_positive:
        raise SignRestriction(f"X must be strictly positive, got {X.sign_summary.value}")
    budget = resolve_budget(budget)
    products = binary_op(BinaryOp.PRODUCT, A, X, budget)
    report = BigratioReport(size_x=len(X),
                            ax_ax=binary_op_size(BinaryOp.SUM, products, products, budget),
                            x_plus_x=binary_op_size(BinaryOp.SUM, X, X, budget),
                            e_plus_x=energy(EnergyKind.ADDITIVE, X, budget=budget),
                            ratio_set=binary_op_size(BinaryOp.RATIO, A, A, budget))
    logger.debug(f"bigratio_diagnostic: {report}")
    if not report.floor_holds:
        logger.warning(f"bigratio_diagnostic: growth floor failed for {report}")
    return report
