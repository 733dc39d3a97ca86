from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence, Tuple
import numpy as np
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.statistics_managment import get_statistics_manager
from Sumprod.Utils.error_management import DensityFailure, ResourceLimit, SignRestriction
from Sumprod.Tool.bitset_management.compute_budget import ComputeBudget, resolve_budget, FFT_BYTES_PER_SLOT
from Sumprod.Tool.bitset_management.integer_bitset import indicator, next_power_of_two, SHIFT_OR_LIMIT
from Sumprod.Tool.set_core.finite_set import FiniteSet
from Sumprod.Tool.construction.arithmetic_functions import f_values
from Sumprod.Tool.construction.parameters import ConstructionParams

# The residue-class estimate gives exponent 1 - 2 log 2 for the normalized size when logs are base 2;
# the natural-log reading of the theorem statement gives 2 ln 2 - 1 for its reciprocal form.
EXPONENT_LABELS = ("1-2log2", "2ln2-1")

PRODUCTS_PER_CHUNK = 1 << 24


class ConstructionReport:

    def __init__(self, params: ConstructionParams, A: FiniteSet):
        self.params = params
        self.A = A
        self.size_AA: Optional[int] = None
        self.size_AA_plus_mA: Optional[int] = None
        self.residues_hit: Optional[int] = None
        self.residue_proportion: Optional[Fraction] = None
        self.block_density_min: Optional[int] = None
        self.block_density_holds: Optional[bool] = None
        self.exponent_labels = EXPONENT_LABELS

    @property
    def normalized(self) -> Optional[Fraction]:
        if self.size_AA_plus_mA is None:
            return None
        return Fraction(self.size_AA_plus_mA, self.params.n ** 2)

    @property
    def A_in_range(self) -> bool:
        return self.A.min >= 1 and self.A.max <= 3 * self.params.n

    @property
    def sumset_in_range(self) -> bool:
        top = self.A.max
        return top * top + self.params.m * top <= 10 * self.params.n ** 2

    @property
    def residue_bound_holds(self) -> Optional[bool]:
        """|AA+mA| <= residues_hit * ceil(10 n^2 / q^2)."""
        if self.size_AA_plus_mA is None or self.residues_hit is None:
            return None
        per_class = -(-10 * self.params.n ** 2 // self.params.m)
        return self.size_AA_plus_mA <= self.residues_hit * per_class

    def as_dict(self) -> dict:
        return {"n": self.params.n, "y": self.params.y, "q": self.params.q, "m": self.params.m,
                "theta": f"{self.params.theta:.12g}", "overridden": self.params.overridden, "size_A": len(self.A),
                "size_AA": self.size_AA, "size_AA_plus_mA": self.size_AA_plus_mA, "residues_hit": self.residues_hit,
                "residue_proportion": self.residue_proportion, "normalized": self.normalized,
                "block_density_min": self.block_density_min, "A_in_range": self.A_in_range,
                "sumset_in_range": self.sumset_in_range}

    def to_text(self) -> str:
        """Flat key=value block."""
        lines = [f"{key}={'' if value is None else value}" for key, value in self.as_dict().items()]
        lines.append(f"formula_theta={self.params.formula_theta:.12g}")
        lines.append(f"log_base={self.params.log_base}")
        lines.append(f"residue_bound_holds={self.residue_bound_holds}")
        lines.append(f"exponent_labels={','.join(self.exponent_labels)}")
        return "\n".join(lines)

    def __repr__(self):
        return f"ConstructionReport(n={self.params.n}, q={self.params.q}, |AA|={self.size_AA}, " \
               f"|AA+mA|={self.size_AA_plus_mA})"


def construct_set(n: int, params: ConstructionParams, theta_override: Optional[float] = None, measure: bool = True,
                  budget: ComputeBudget = None) -> ConstructionReport:
    """
    A = the first n positive integers x (scanning from 1) with f(x) > theta.

    :param measure: also fill |AA|, |AA+mA|, the residue profile and the block density
    :raises DensityFailure: when fewer than n integers in [1, 3n] qualify
    """
    logger = get_logger()
    logger.info(f"======== construct_set n={n}")
    if theta_override is not None:
        params = params.with_theta(theta_override)
    xs = np.arange(1, 3 * n + 1, dtype=np.int64)
    qualifying = xs[f_values(xs, params.y) > params.theta]
    if len(qualifying) < n:
        raise DensityFailure(f"only {len(qualifying)} integers in [1, {3 * n}] have f > {params.theta}; need {n}")
    report = ConstructionReport(params, FiniteSet.from_scaled(1, qualifying[:n].tolist()))
    logger.debug(f"construct_set: theta={params.theta:.6f}, A spans [{report.A.min}, {report.A.max}]")

    if measure:
        report.block_density_min, report.block_density_holds = block_density(n, params)
        report.size_AA, report.size_AA_plus_mA = exact_measure(report.A, params.m, budget)
        report.residues_hit, report.residue_proportion = residue_profile(report.A, params.m)
        logger.info(f"--------------- |AA|={report.size_AA}, |AA+mA|={report.size_AA_plus_mA}, "
                    f"normalized={float(report.normalized):.6f}, residues hit {report.residues_hit}/{params.m}")
    return report


def block_density(n: int, params: ConstructionParams) -> Tuple[Optional[int], Optional[bool]]:
    """
    Smallest number of integers with f > formula_theta in a block (kq, (k+1)q] inside [1, 3n],
    and whether it reaches q/2. Both are None when no whole block fits in [1, 3n].
    """
    q = params.q
    blocks = (3 * n) // q
    if blocks == 0:
        get_logger().debug(f"block_density: q={q} exceeds 3n={3 * n}, no complete block")
        return None, None
    xs = np.arange(1, blocks * q + 1, dtype=np.int64)
    counts = (f_values(xs, params.y) > params.formula_theta).reshape(blocks, q).sum(axis=1)
    minimum = int(counts.min())
    return minimum, 2 * minimum >= q


def _positive_ints(A: FiniteSet) -> Tuple[int, ...]:
    if not (A.is_integral and A.is_positive):
        raise SignRestriction("the construction measurements need a set of positive integers")
    return A.as_ints()


def _product_marks(ints: Sequence[int], length: int) -> np.ndarray:
    """Indicator of AA over [0, length), marking a_i * a_j for j >= i in row chunks."""
    values = np.asarray(ints, dtype=np.int64)
    marks = np.zeros(length, dtype=bool)
    rows_per_chunk = max(1, PRODUCTS_PER_CHUNK // len(values))
    for start in range(0, len(values), rows_per_chunk):
        block = values[start:start + rows_per_chunk]
        marks[np.multiply.outer(block, values[start:]).ravel()] = True
    return marks


def exact_measure(A: FiniteSet, m: int, budget: ComputeBudget = None) -> Tuple[int, int]:
    """
    (|AA|, |AA + mA|) on a bit-vector.

    The AA indicator is laid out as a (rows, m) grid so column r holds the multiples-of-m offsets
    of the products congruent to r. Shifting by m*a moves every column down by a rows, hence
    |AA + mA| = sum over r of |K_r + A| with K_r the rows set in column r. Columns are independent
    and processed in batches (shift-or for small A, FFT convolution otherwise).

    :raises ResourceLimit: when the indicator and one column batch do not fit the memory budget
    """
    logger = get_logger()
    budget = resolve_budget(budget)
    ints = _positive_ints(A)
    top = ints[-1]
    rows = (top * top) // m + 1
    grid_bytes = rows * m
    offsets = [value - ints[0] for value in ints]
    span = offsets[-1] + 1
    out_rows = rows + span - 1
    shift_or = len(ints) <= SHIFT_OR_LIMIT
    fft_size = next_power_of_two(out_rows)
    column_bytes = out_rows if shift_or else FFT_BYTES_PER_SLOT * fft_size
    required = grid_bytes + column_bytes * budget.workers
    if not budget.fits_memory(required):
        raise ResourceLimit(f"exact_measure over [1, {top * top + m * top}] does not fit the memory budget",
                            required=required, budget=budget.memory_budget_bytes,
                            advice="use residue_profile for the residue-class estimate")

    grid = _product_marks(ints, grid_bytes).reshape(rows, m)
    size_aa = int(np.count_nonzero(grid))
    batch = max(1, min(m, (budget.memory_budget_bytes - grid_bytes) // (column_bytes * budget.workers)))
    batches = [(start, min(m, start + batch)) for start in range(0, m, batch)]
    logger.debug(f"exact_measure: |A|={len(ints)}, m={m}, grid {rows}x{m}, {len(batches)} column batches, "
                 f"{'shift-or' if shift_or else 'fft'}")

    if shift_or:
        def count_batch(bounds):
            columns = grid[:, bounds[0]:bounds[1]]
            shifted = np.zeros((out_rows, columns.shape[1]), dtype=bool)
            for offset in offsets:
                shifted[offset:offset + rows] |= columns
            return int(np.count_nonzero(shifted))
    else:
        a_spectrum = np.fft.rfft(indicator(offsets, span).astype(np.float64), fft_size)

        def count_batch(bounds):
            spectrum = np.fft.rfft(grid[:, bounds[0]:bounds[1]].astype(np.float64), fft_size, axis=0)
            spectrum *= a_spectrum[:, None]
            return int(np.count_nonzero(np.fft.irfft(spectrum, fft_size, axis=0)[:out_rows] > 0.5))

    with ThreadPoolExecutor(max_workers=budget.workers) as executor:
        size_sumset = sum(executor.map(count_batch, batches))
    get_statistics_manager().increment('exact_measurements')
    return size_aa, size_sumset


def residue_hit_mask(residues: Sequence[int], modulus: int) -> np.ndarray:
    """Boolean mask over [0, modulus) of the residues of pairwise products of `residues`."""
    values = np.asarray(residues, dtype=np.int64)
    hit = np.zeros(modulus, dtype=bool)
    rows_per_chunk = max(1, PRODUCTS_PER_CHUNK // len(values))
    for start in range(0, len(values), rows_per_chunk):
        hit[np.multiply.outer(values[start:start + rows_per_chunk], values[start:]).ravel() % modulus] = True
    return hit


def residue_profile(A: FiniteSet, modulus: int) -> Tuple[int, Fraction]:
    """
    Number of residue classes mod `modulus` that meet AA, from the residues of A alone,
    and that number as a proportion of the modulus.
    """
    ints = _positive_ints(A)
    if modulus < 1:
        raise ValueError(f"modulus must be positive, got {modulus}")
    residues = sorted({value % modulus for value in ints})
    hits = int(np.count_nonzero(residue_hit_mask(residues, modulus)))
    return hits, Fraction(hits, modulus)
