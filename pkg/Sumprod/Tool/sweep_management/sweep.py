import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union
import yaml
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.singleton_management import SingletonManager
from Sumprod.Utils.statistics_managment import get_statistics_manager
from Sumprod.Utils.error_management import ConfigError, ResourceLimit
from Sumprod.Utils.configuration_management import get_config_manager, get_knob_manager, knob_value
from Sumprod.Utils.configuration_management.enums import BinaryOp, EnergyKind, FamilyKind, SWEEP_MEASUREMENTS
from Sumprod.Tool.bitset_management.compute_budget import ComputeBudget
from Sumprod.Tool.set_core.finite_set import FiniteSet
from Sumprod.Tool.set_core.set_operations import binary_op_size, aa_plus_a_size
from Sumprod.Tool.set_core.energy import energy
from Sumprod.Tool.construction.parameters import choose_parameters
from Sumprod.Tool.construction.construction import exact_measure, residue_profile
from Sumprod.Tool.sweep_management.families import FamilySpec, generate_family
from Sumprod.Tool.sweep_management.records import SweepRecord, MEASUREMENT_COLUMNS, RESOURCE_SENTINEL, \
    write_records, write_timings, timings_path
from Sumprod.Tool.sweep_management.run_log import RunLog, run_log_path

SWEEP_SECTION = "sweep"
BUDGETS_SECTION = "budgets"
FAMILY_SECTION_PREFIX = "family "
SWEEP_KEYS = {"sizes", "measurements", "seed"}
FAMILY_KEYS = {"kind", "sizes", "start", "step", "ratio", "range", "seed", "path"}


class SweepConfig:
    """
    A parsed sweep config: families in config order, each with its sorted size grid, the
    requested measurements and the knob overrides of the `budgets` section.
    """

    def __init__(self, families: List[Tuple[FamilySpec, List[int]]], measurements: List[str],
                 budgets: Dict[str, str], source: Optional[str] = None):
        self.families = families
        self.measurements = measurements
        self.budgets = budgets
        self.source = source

    def cells(self) -> List[FamilySpec]:
        """Canonical cell order: family order of the config, then n ascending."""
        return [spec.with_size(n) for spec, sizes in self.families for n in sizes]

    def fingerprint(self) -> str:
        description = {"families": [[spec.as_dict(), sizes] for spec, sizes in self.families],
                       "measurements": self.measurements, "budgets": self.budgets}
        return hashlib.sha256(json.dumps(description, sort_keys=True).encode("utf-8")).hexdigest()

    def __repr__(self):
        return (f"SweepConfig(families={[spec.name for spec, _ in self.families]}, "
                f"measurements={self.measurements}, cells={len(self.cells())})")


def _as_list(value, what: str) -> List[str]:
    if isinstance(value, list):
        return [str(item).strip() for item in value]
    if isinstance(value, (int, str)) and not isinstance(value, bool):
        return [item.strip() for item in str(value).split(",") if item.strip()]
    raise ConfigError(f"{what} must be a comma-separated list, got {value!r}")


def _as_sizes(value, what: str) -> List[int]:
    try:
        sizes = sorted({int(item) for item in _as_list(value, what)})
    except ValueError:
        raise ConfigError(f"{what} must list integers, got {value!r}")
    if not sizes or sizes[0] < 1:
        raise ConfigError(f"{what} must list sizes >= 1, got {value!r}")
    return sizes


def _scalar_section(config: dict, name: str, allowed: Optional[set] = None) -> dict:
    section = config.get(name) or {}
    if not isinstance(section, dict):
        raise ConfigError(f"section '{name}' must hold key: value pairs")
    for key, value in section.items():
        if isinstance(value, (dict, float)):
            raise ConfigError(f"{name}.{key}: expected an integer, p/q or a comma-separated list, got {value!r}")
        if allowed is not None and key not in allowed:
            raise ConfigError(f"{name}.{key}: unknown key, expected one of {sorted(allowed)}")
    return section


def parse_sweep_config(config: dict, source: str = None) -> SweepConfig:
    """
    :raises ConfigError: unknown sections or keys, nested values, missing sizes, unknown measurements
    """
    if not isinstance(config, dict):
        raise ConfigError("a sweep config is a mapping of sections")
    for name in config:
        if name not in (SWEEP_SECTION, BUDGETS_SECTION) and not str(name).startswith(FAMILY_SECTION_PREFIX):
            raise ConfigError(f"unknown section '{name}'")

    sweep_section = _scalar_section(config, SWEEP_SECTION, SWEEP_KEYS)
    measurements = _as_list(sweep_section.get("measurements", ",".join(SWEEP_MEASUREMENTS)), "sweep.measurements")
    unknown = [name for name in measurements if name not in SWEEP_MEASUREMENTS]
    if unknown:
        raise ConfigError(f"unknown measurements {unknown}, expected some of {list(SWEEP_MEASUREMENTS)}")
    measurements = [name for name in SWEEP_MEASUREMENTS if name in measurements]
    default_sizes = sweep_section.get("sizes")
    default_seed = sweep_section.get("seed")

    budgets = {str(key): str(value) for key, value in _scalar_section(config, BUDGETS_SECTION).items()}

    families = []
    for name in config:
        if not str(name).startswith(FAMILY_SECTION_PREFIX):
            continue
        family_name = str(name)[len(FAMILY_SECTION_PREFIX):].strip()
        section = _scalar_section(config, name, FAMILY_KEYS)
        if "kind" not in section:
            raise ConfigError(f"{name}: missing 'kind'")
        sizes = section.get("sizes", default_sizes)
        if sizes is None:
            raise ConfigError(f"{name}: no sizes (set sweep.sizes or {name}.sizes)")
        parameters = {key: value for key, value in section.items() if key not in ("kind", "sizes")}
        if section["kind"] == FamilyKind.RANDOM_SUBSET.value and "seed" not in parameters:
            if default_seed is None:
                raise ConfigError(f"{name}: random_subset needs a seed (set {name}.seed or sweep.seed)")
            parameters["seed"] = default_seed
        try:
            spec = FamilySpec(section["kind"], name=family_name, **parameters)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"{name}: {e}") from e
        families.append((spec, _as_sizes(sizes, f"{name}.sizes")))
    if not families:
        raise ConfigError("a sweep config needs at least one 'family <name>' section")
    return SweepConfig(families, measurements, budgets, source)


def load_sweep_config(path: Union[str, Path]) -> SweepConfig:
    logger = get_logger()
    path = Path(path)
    logger.info(f"--------------- sweep config: {path}")
    try:
        with open(path, encoding="utf-8") as handle:
            data = yaml.safe_load(handle)
    except FileNotFoundError:
        raise ConfigError(f"sweep config {path} not found")
    except yaml.YAMLError as e:
        raise ConfigError(f"sweep config {path} is not valid YAML: {e}") from e
    return parse_sweep_config(data, str(path))


def apply_budgets(config: SweepConfig):
    """Override knobs from the `budgets` section; knobs defined with -D on the command line win."""
    logger = get_logger()
    knob_manager = get_knob_manager()
    defined = get_config_manager().get_value('defined_knobs', default=())
    for name, value in config.budgets.items():
        if name in defined:
            logger.debug(f"budgets.{name} ignored, set on the command line")
            continue
        knob_manager.override_knob(name, value)
        logger.info(f"--------------- budget: {name}={value}")


def _measure_construction(A: FiniteSet, spec: FamilySpec, budget: ComputeBudget) -> Dict[str, str]:
    if spec.kind is not FamilyKind.BALOG_CONSTRUCTION:
        return {}
    params = choose_parameters(spec.size)
    _, aa_plus_ma = exact_measure(A, params.m, budget)
    residues_hit, _ = residue_profile(A, params.m)
    return {"construction_y": str(params.y), "construction_q": str(params.q), "construction_m": str(params.m),
            "construction_theta": f"{params.theta:.12g}", "construction_aa_plus_ma": str(aa_plus_ma),
            "construction_residues_hit": str(residues_hit),
            "construction_normalized": str(Fraction(aa_plus_ma, spec.size ** 2))}


MEASUREMENTS: Dict[str, Callable[[FiniteSet, FamilySpec, ComputeBudget], Dict[str, str]]] = {
    "sumset": lambda A, spec, budget: {"sumset": str(binary_op_size(BinaryOp.SUM, A, A, budget))},
    "productset": lambda A, spec, budget: {"productset": str(binary_op_size(BinaryOp.PRODUCT, A, A, budget))},
    "ratioset": lambda A, spec, budget: {"ratioset": str(binary_op_size(BinaryOp.RATIO, A, A, budget))},
    "aa_plus_a": lambda A, spec, budget: {"aa_plus_a": str(aa_plus_a_size(A, budget))},
    "e_plus": lambda A, spec, budget: {"e_plus": str(energy(EnergyKind.ADDITIVE, A, budget=budget))},
    "e_mult": lambda A, spec, budget: {"e_mult": str(energy(EnergyKind.MULTIPLICATIVE, A, budget=budget))},
    "construction": _measure_construction,
}


def run_cell(spec: FamilySpec, measurements: Sequence[str], budget: ComputeBudget) -> SweepRecord:
    """
    Measure one (family, n) cell. A budget overrun in a measurement fills its columns with
    the `NA:resource` sentinel; input errors propagate.
    """
    logger = get_logger()
    statistics = get_statistics_manager()
    record = SweepRecord(spec.name, spec.kind.value, spec.size)
    try:
        A = generate_family(spec)
    except (ResourceLimit, MemoryError) as e:
        logger.warning(f"cell {spec.name}/{spec.size}: generation stopped by a budget: {e}")
        for measurement in measurements:
            record.values.update({column: RESOURCE_SENTINEL for column in MEASUREMENT_COLUMNS[measurement]})
        statistics.increment('resource_limited_cells')
        return record
    record.size = len(A)

    for measurement in measurements:
        started = time.perf_counter()
        try:
            record.values.update(MEASUREMENTS[measurement](A, spec, budget))
        except (ResourceLimit, MemoryError) as e:
            logger.warning(f"cell {spec.name}/{spec.size}: {measurement} stopped by a budget: {e}")
            record.values.update({column: RESOURCE_SENTINEL for column in MEASUREMENT_COLUMNS[measurement]})
            statistics.increment('resource_limited_cells')
        record.timings[measurement] = time.perf_counter() - started
    statistics.increment('measured_cells')
    logger.debug(f"cell {spec.name}/{spec.size}: {record.values}")
    return record


def _init_worker(knob_values: dict):
    """Fresh singletons in the worker process, knobs as in the parent."""
    SingletonManager.reset()
    get_logger(get_manager=True).echo_to_console = False
    knob_manager = get_knob_manager()
    for name, value in knob_values.items():
        knob_manager.override_knob(name, value)
    knob_manager.seal_all()


def _run_cell_in_worker(spec: FamilySpec, measurements: Sequence[str], budget: ComputeBudget):
    statistics = get_statistics_manager()
    statistics.reset()
    record = run_cell(spec, measurements, budget)
    return record, statistics.all()


def run_sweep(config: SweepConfig, out_path: Union[str, Path], workers: int = None,
              resume: bool = True) -> List[SweepRecord]:
    """
    Run every cell of `config` and write the CSV (canonical order) with its `.timings.csv`
    sidecar. Completed cells are logged to `<out>.runlog.jsonl`; with `resume` the cells already
    in that log are not recomputed.

    The CSV is byte-identical for any worker count.
    """
    logger = get_logger()
    logger.info(f"======== sweep {config}")
    out_path = Path(out_path)
    workers = workers if workers is not None else knob_value('workers')
    budget = ComputeBudget.from_knobs()
    statistics = get_statistics_manager()

    cells = config.cells()
    run_log = RunLog(run_log_path(out_path), config.fingerprint())
    done = run_log.load() if resume else {}
    pending = [spec for spec in cells if (spec.name, spec.size) not in done]
    logger.info(f"--------------- {len(cells)} cells, {len(pending)} to run, {workers} worker(s)")

    run_log.open(fresh=not resume)
    with run_log:
        if workers <= 1:
            for spec in pending:
                record = run_cell(spec, config.measurements, budget)
                run_log.append(record)
                done[record.key] = record
        else:
            snapshot = get_knob_manager().snapshot()
            with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(snapshot,)) as pool:
                futures = [pool.submit(_run_cell_in_worker, spec, config.measurements, budget) for spec in pending]
                for future in as_completed(futures):
                    record, counters = future.result()
                    statistics.merge(counters)
                    run_log.append(record)
                    done[record.key] = record

    records = [done[(spec.name, spec.size)] for spec in cells]
    out_path.parent.mkdir(parents=True, exist_ok=True)
    write_records(out_path, records)
    write_timings(timings_path(out_path), records)
    logger.info(f"--------------- wrote {len(records)} records to {out_path}")
    return records
