from pathlib import Path
from typing import Optional, Sequence, Union
import numpy as np
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.error_management import InsufficientData, InputError
from Sumprod.Tool.sweep_management.records import FIELDS, read_records

MINIMUM_POINTS = 3


class FitResult:
    """ln y = slope * ln x + intercept, with the RMS of the residuals."""

    def __init__(self, slope: float, intercept: float, residual: float, points: int):
        self.slope = slope
        self.intercept = intercept
        self.residual = residual
        self.points = points

    def as_tuple(self):
        return self.slope, self.intercept, self.residual

    def to_text(self) -> str:
        return f"slope={self.slope:.6f}\nintercept={self.intercept:.6f}\nresidual={self.residual:.6g}\n" \
               f"points={self.points}"

    def __repr__(self):
        return f"FitResult(slope={self.slope:.6f}, intercept={self.intercept:.6f}, residual={self.residual:.3g}, " \
               f"points={self.points})"


def fit_points(xs: Sequence[float], ys: Sequence[float]) -> FitResult:
    """
    Least-squares line through (ln x, ln y) with numpy.polyfit.

    :raises InsufficientData: fewer than 3 points with x, y > 0
    """
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    usable = (x > 0) & (y > 0)
    x, y = x[usable], y[usable]
    if len(x) < MINIMUM_POINTS:
        raise InsufficientData(f"a log-log fit needs at least {MINIMUM_POINTS} positive points, got {len(x)}")
    if np.unique(x).size < 2:
        raise InsufficientData("a log-log fit needs at least two distinct x values")
    log_x, log_y = np.log(x), np.log(y)
    slope, intercept = np.polyfit(log_x, log_y, 1)
    residuals = log_y - (slope * log_x + intercept)
    return FitResult(float(slope), float(intercept), float(np.sqrt(np.mean(residuals ** 2))), len(x))


def fit_exponent(csv_path: Union[str, Path], x_column: str, y_column: str, x_min: Optional[float] = None,
                 x_max: Optional[float] = None) -> FitResult:
    """
    Fit y ~ x^slope over the sweep rows with x in [x_min, x_max]; sentinel and empty cells are skipped.

    :raises SchemaMismatch: the file is not a sweep CSV of the current schema
    :raises InsufficientData: fewer than 3 usable rows
    """
    logger = get_logger()
    for column in (x_column, y_column):
        if column not in FIELDS:
            raise InputError(f"unknown column '{column}', expected one of {FIELDS}")
    xs, ys = [], []
    for record in read_records(csv_path):
        x, y = record.numeric(x_column), record.numeric(y_column)
        if x is None or y is None:
            continue
        if (x_min is not None and x < x_min) or (x_max is not None and x > x_max):
            continue
        xs.append(x)
        ys.append(y)
    result = fit_points(xs, ys)
    logger.info(f"--------------- fit {y_column} ~ {x_column}^s: {result}")
    return result
