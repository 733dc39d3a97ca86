"""
Sweep CSV schema.

A sweep file starts with the comment line `# sumprod-sweep schema=<version>` followed by a fixed
header row. Cells a budget stopped hold the sentinel `NA:resource`; measurements that were not
requested are empty.
"""
import csv
import io
import re
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Union
from Sumprod.Utils.error_management import SchemaMismatch, InputFormat

SCHEMA_VERSION = 1
SCHEMA_LINE = f"# sumprod-sweep schema={SCHEMA_VERSION}"
RESOURCE_SENTINEL = "NA:resource"

KEY_FIELDS = ["family", "kind", "n", "size"]
MEASUREMENT_FIELDS = ["sumset", "productset", "ratioset", "aa_plus_a", "e_plus", "e_mult"]
CONSTRUCTION_FIELDS = ["construction_y", "construction_q", "construction_m", "construction_theta",
                       "construction_aa_plus_ma", "construction_residues_hit", "construction_normalized"]
FIELDS = KEY_FIELDS + MEASUREMENT_FIELDS + CONSTRUCTION_FIELDS

# which columns each requested measurement fills
MEASUREMENT_COLUMNS = {name: [name] for name in MEASUREMENT_FIELDS}
MEASUREMENT_COLUMNS["construction"] = CONSTRUCTION_FIELDS

_SCHEMA_PATTERN = re.compile(r"^#\s*sumprod-sweep\s+schema=(\S+)\s*$")


class SweepRecord:
    """
    One (family, n) cell of a sweep. `values` maps column name to its CSV text; `timings`
    holds wall seconds per measurement and never reaches the main CSV.
    """

    def __init__(self, family: str, kind: str, n: int, size: Optional[int] = None,
                 values: Optional[Dict[str, str]] = None, timings: Optional[Dict[str, float]] = None):
        self.family = family
        self.kind = kind
        self.n = n
        self.size = size
        self.values = values or {}
        self.timings = timings or {}

    @property
    def key(self):
        return self.family, self.n

    def get(self, column: str) -> str:
        if column in KEY_FIELDS:
            value = getattr(self, column)
            return "" if value is None else str(value)
        return self.values.get(column, "")

    def numeric(self, column: str) -> Optional[float]:
        """The column as a float, or None for empty cells and sentinels."""
        text = self.get(column)
        try:
            return float(text)
        except ValueError:
            if "/" in text:
                numerator, denominator = text.split("/", 1)
                try:
                    return int(numerator) / int(denominator)
                except ValueError:
                    return None
            return None

    @property
    def resource_limited(self) -> bool:
        return any(value == RESOURCE_SENTINEL for value in self.values.values())

    def to_row(self) -> List[str]:
        return [self.get(column) for column in FIELDS]

    def as_dict(self) -> dict:
        return {"family": self.family, "kind": self.kind, "n": self.n, "size": self.size, "values": self.values,
                "timings": self.timings}

    @classmethod
    def from_dict(cls, data: dict) -> "SweepRecord":
        return cls(data["family"], data["kind"], data["n"], data.get("size"), data.get("values"),
                   data.get("timings"))

    def __eq__(self, other):
        return isinstance(other, SweepRecord) and self.to_row() == other.to_row()

    def __repr__(self):
        return f"SweepRecord(family={self.family}, n={self.n}, size={self.size})"


def records_to_csv(records: Iterable[SweepRecord]) -> str:
    buffer = io.StringIO()
    buffer.write(SCHEMA_LINE + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(FIELDS)
    for record in records:
        writer.writerow(record.to_row())
    return buffer.getvalue()


def write_records(path: Union[str, Path], records: Iterable[SweepRecord]):
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(records_to_csv(records))


def write_timings(path: Union[str, Path], records: Iterable[SweepRecord]):
    """`.timings.csv` sidecar: family, n, measurement, seconds."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["family", "n", "measurement", "seconds"])
        for record in records:
            for measurement, seconds in record.timings.items():
                writer.writerow([record.family, record.n, measurement, f"{seconds:.6f}"])


def timings_path(csv_path: Union[str, Path]) -> Path:
    csv_path = Path(csv_path)
    return csv_path.with_name(csv_path.stem + ".timings.csv")


def read_records(path: Union[str, Path]) -> List[SweepRecord]:
    """
    :raises SchemaMismatch: missing schema line, another schema version, or an unexpected header
    :raises InputFormat: unreadable file or a row of the wrong width
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except FileNotFoundError:
        raise InputFormat(path, 0, "file not found")
    if not lines:
        raise SchemaMismatch(f"{path} is empty, expected '{SCHEMA_LINE}'")
    match = _SCHEMA_PATTERN.match(lines[0])
    if not match:
        raise SchemaMismatch(f"{path} does not start with '{SCHEMA_LINE}'")
    if match.group(1) != str(SCHEMA_VERSION):
        raise SchemaMismatch(f"{path} has schema {match.group(1)}, this reader handles schema {SCHEMA_VERSION}")

    rows = list(csv.reader(lines[1:]))
    if not rows or rows[0] != FIELDS:
        raise SchemaMismatch(f"{path} header does not match schema {SCHEMA_VERSION}")
    records = []
    for line_number, row in enumerate(rows[1:], start=3):
        if not row:
            continue
        if len(row) != len(FIELDS):
            raise InputFormat(path, line_number, f"expected {len(FIELDS)} columns, got {len(row)}")
        cells = dict(zip(FIELDS, row))
        try:
            n = int(cells["n"])
            size = int(cells["size"]) if cells["size"] else None
        except ValueError:
            raise InputFormat(path, line_number, "n and size must be integers")
        values = {column: cells[column] for column in MEASUREMENT_FIELDS + CONSTRUCTION_FIELDS if cells[column]}
        records.append(SweepRecord(cells["family"], cells["kind"], n, size, values))
    return records
