from typing import List
from Sumprod.Utils.configuration_management.knob_manager import Knob
from Sumprod.Utils.configuration_management.enums import LogBase

GIB = 1024 ** 3


def _parse_bool(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got '{value}'")


def _parse_size(value: str) -> int:
    """Accepts plain byte counts or K/M/G suffixed sizes ('8G', '512M')."""
    text = value.strip().upper().rstrip("B").rstrip("I")
    multipliers = {"K": 1024, "M": 1024 ** 2, "G": GIB}
    if text and text[-1] in multipliers:
        return int(float(text[:-1]) * multipliers[text[-1]])
    return int(text)


def _parse_log_base(value: str) -> str:
    return LogBase(value.strip()).value


def default_knobs() -> List[Knob]:
    """
    Tunable budgets and switches. Every knob can be overridden with `-D name=value`
    or from the `budgets` section of a sweep config, until the knobs are sealed.
    """
    return [
        Knob(name='memory_budget_bytes', value_func=8 * GIB, value_type=_parse_size,
             description="Working-state budget for combine and exact_measure (default 8 GiB)"),
        Knob(name='streamed_count', value_func=True, value_type=_parse_bool,
             description="Past the memory budget, return an exact partitioned count instead of raising"),
        Knob(name='int_fast_path_max_range', value_func=2 ** 31, value_type=int,
             description="Largest value span handled by the integer bit-vector fast path"),
        Knob(name='int_fast_path_max_magnitude', value_func=2 ** 62, value_type=int,
             description="Largest |value| allowed in numpy int64 arithmetic"),
        Knob(name='partition_count', value_func=16, value_type=int,
             description="Value-range partitions used by streamed counting"),
        Knob(name='moment_block_limit', value_func=44100, value_type=int,
             description="Largest q^2 enumerated by the moment and Markov checks"),
        Knob(name='workers', value_func=1, value_type=int,
             description="Worker pool size for partitioned computations and sweeps"),
        Knob(name='log_base', value_func=LogBase.NATURAL.value, value_type=_parse_log_base,
             description="Logarithm base of the construction thresholds ('e' or '2')"),
        Knob(name='oracle_max_size', value_func=64, value_type=int,
             description="Largest set size accepted by the brute-force oracles"),
    ]
