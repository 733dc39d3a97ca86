from pathlib import Path
from typing import Optional, Union
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.error_management import ConfigError, InputError
from Sumprod.Utils.configuration_management.enums import FamilyKind
from Sumprod.Utils.seed_management import SplitMix64
from Sumprod.Tool.set_core.exact_scalar import to_scalar
from Sumprod.Tool.set_core.finite_set import FiniteSet, make_set
from Sumprod.Tool.set_core.set_io import read_set_file


class FamilySpec:
    """
    A named family of sets indexed by the size n.

    Kind parameters: `start`/`step` (arithmetic), `ratio`/`start` (geometric), `range`/`seed`
    (random_subset, values drawn from [1, range]), `path` (file, the n smallest elements).
    For balog_construction n is the construction parameter, not the size of the set.
    """

    def __init__(self, kind: Union[FamilyKind, str], size: int = None, name: str = None, start=1, step=1, ratio=2,
                 range: Optional[int] = None, seed: Optional[int] = None, path: Union[str, Path] = None):
        try:
            self.kind = kind if isinstance(kind, FamilyKind) else FamilyKind(kind)
        except ValueError:
            raise ConfigError(f"unknown family kind '{kind}', expected one of {[k.value for k in FamilyKind]}")
        self.size = size
        self.name = name or self.kind.value
        self.start = to_scalar(start)
        self.step = to_scalar(step)
        self.ratio = to_scalar(ratio)
        self.range = range
        self.seed = seed
        self.path = path

    def with_size(self, size: int) -> "FamilySpec":
        return FamilySpec(self.kind, size, self.name, self.start, self.step, self.ratio, self.range, self.seed,
                          self.path)

    def as_dict(self) -> dict:
        """Parameters that identify the family (used in run-log fingerprints)."""
        return {"name": self.name, "kind": self.kind.value, "start": str(self.start), "step": str(self.step),
                "ratio": str(self.ratio), "range": self.range, "seed": self.seed,
                "path": None if self.path is None else str(self.path)}

    def __repr__(self):
        return f"FamilySpec(name={self.name}, kind={self.kind.value}, size={self.size})"


def _interval(spec: FamilySpec, n: int) -> FiniteSet:
    return FiniteSet.from_scaled(1, range(1, n + 1))


def _arithmetic(spec: FamilySpec, n: int) -> FiniteSet:
    if spec.step == 0 and n > 1:
        raise InputError("arithmetic family needs a non-zero step")
    return make_set(spec.start + k * spec.step for k in range(n))


def _geometric(spec: FamilySpec, n: int) -> FiniteSet:
    if n > 1 and (spec.ratio == 0 or abs(spec.ratio) == 1):
        raise InputError(f"geometric family needs a ratio other than 0 and +-1, got {spec.ratio}")
    if spec.start == 0:
        raise InputError("geometric family needs a non-zero start")
    return make_set(spec.start * spec.ratio ** k for k in range(n))


def _convex_squares(spec: FamilySpec, n: int) -> FiniteSet:
    return FiniteSet.from_scaled(1, (k * k for k in range(1, n + 1)))


def _random_subset(spec: FamilySpec, n: int) -> FiniteSet:
    if spec.seed is None:
        raise ConfigError(f"random_subset family '{spec.name}' needs a seed")
    upper = spec.range if spec.range is not None else 4 * n
    if upper < n:
        raise InputError(f"cannot draw {n} distinct values from [1, {upper}]")
    # one independent stream per (seed, n) so adding sizes does not shift the others
    generator = SplitMix64(spec.seed ^ (n * 0x9E3779B97F4A7C15))
    return FiniteSet.from_scaled(1, sorted(generator.sample_distinct(n, 1, upper)))


def _balog_construction(spec: FamilySpec, n: int) -> FiniteSet:
    from Sumprod.Tool.construction.parameters import choose_parameters
    from Sumprod.Tool.construction.construction import construct_set
    return construct_set(n, choose_parameters(n), measure=False).A


def _from_file(spec: FamilySpec, n: int) -> FiniteSet:
    if spec.path is None:
        raise ConfigError(f"file family '{spec.name}' needs a path")
    A = read_set_file(spec.path)
    if n > len(A):
        raise InputError(f"{spec.path} holds {len(A)} elements, fewer than the requested {n}")
    return FiniteSet(A.elements[:n])


GENERATORS = {
    FamilyKind.INTERVAL: _interval,
    FamilyKind.ARITHMETIC: _arithmetic,
    FamilyKind.GEOMETRIC: _geometric,
    FamilyKind.CONVEX_SQUARES: _convex_squares,
    FamilyKind.RANDOM_SUBSET: _random_subset,
    FamilyKind.BALOG_CONSTRUCTION: _balog_construction,
    FamilyKind.FILE: _from_file,
}


def generate_family(spec: FamilySpec) -> FiniteSet:
    """
    Deterministic member of size `spec.size` of the family.

    :raises InputFormat: file family with a missing file or a malformed line
    :raises ConfigError: random_subset without a seed, file family without a path
    """
    logger = get_logger()
    if spec.size is None or spec.size < 1:
        raise InputError(f"family '{spec.name}' needs a size >= 1, got {spec.size}")
    A = GENERATORS[spec.kind](spec, spec.size)
    logger.debug(f"generate_family: {spec} -> |A|={len(A)}")
    return A
