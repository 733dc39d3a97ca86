from enum import Enum


class SignSummary(Enum):
    ALL_POSITIVE = "all_positive"
    ALL_NEGATIVE = "all_negative"
    MIXED = "mixed"
    CONTAINS_ZERO = "contains_zero"


class BinaryOp(Enum):
    SUM = "sum"
    DIFFERENCE = "difference"
    PRODUCT = "product"
    RATIO = "ratio"


class EnergyKind(Enum):
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"


class FamilyKind(Enum):
    INTERVAL = "interval"
    ARITHMETIC = "arithmetic"
    GEOMETRIC = "geometric"
    CONVEX_SQUARES = "convex_squares"
    RANDOM_SUBSET = "random_subset"
    BALOG_CONSTRUCTION = "balog_construction"
    FILE = "file"


class ReportFormat(Enum):
    CSV = "csv"
    SVG = "svg"
    TEXT = "text"


class LogBase(Enum):
    NATURAL = "e"
    BINARY = "2"


# Measurements a sweep can request, in the fixed column order of the sweep CSV
SWEEP_MEASUREMENTS = ("sumset", "productset", "ratioset", "aa_plus_a", "e_plus", "e_mult", "construction")
