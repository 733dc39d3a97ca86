import json
import os
from pathlib import Path
from typing import Dict, Tuple, Union
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.error_management import ConfigError
from Sumprod.Tool.sweep_management.records import SweepRecord, SCHEMA_VERSION


def run_log_path(csv_path: Union[str, Path]) -> Path:
    csv_path = Path(csv_path)
    return csv_path.with_name(csv_path.stem + ".runlog.jsonl")


class RunLog:
    """
    Append-only JSON-lines log of completed sweep cells.

    The first line identifies the sweep (schema version and config fingerprint); each following
    line is one self-contained record, flushed and fsynced before the next cell is logged.
    A torn last line from an interrupted run is ignored on load.
    """

    def __init__(self, path: Union[str, Path], fingerprint: str):
        self.path = Path(path)
        self.fingerprint = fingerprint
        self.handle = None

    def load(self) -> Dict[Tuple[str, int], SweepRecord]:
        """
        Records of an earlier run of the same sweep, keyed by (family, n).

        :raises ConfigError: the log was written for a different config or schema
        """
        logger = get_logger()
        if not self.path.exists():
            return {}
        lines = self.path.read_text(encoding="utf-8").splitlines()
        if not lines:
            return {}
        try:
            header = json.loads(lines[0])
        except json.JSONDecodeError:
            raise ConfigError(f"run log {self.path} has an unreadable header; remove it to start over")
        if header.get("schema") != SCHEMA_VERSION or header.get("fingerprint") != self.fingerprint:
            raise ConfigError(f"run log {self.path} belongs to a different sweep config; remove it to start over")

        records = {}
        for line_number, line in enumerate(lines[1:], start=2):
            try:
                record = SweepRecord.from_dict(json.loads(line))
            except (json.JSONDecodeError, KeyError, TypeError):
                if line_number == len(lines):
                    logger.warning(f"run log {self.path}: ignoring incomplete last line")
                    continue
                raise ConfigError(f"run log {self.path}:{line_number} is corrupt")
            records[record.key] = record
        logger.info(f"--------------- resuming: {len(records)} cells already in {self.path}")
        return records

    def open(self, fresh: bool):
        """Open for appending; `fresh` truncates and writes a new header."""
        self.path.parent.mkdir(parents=True, exist_ok=True)
        if fresh or not self.path.exists() or self.path.stat().st_size == 0:
            self.handle = open(self.path, "w", encoding="utf-8")
            self._write_line({"schema": SCHEMA_VERSION, "fingerprint": self.fingerprint})
        else:
            self._drop_torn_tail()
            self.handle = open(self.path, "a", encoding="utf-8")

    def append(self, record: SweepRecord):
        self._write_line(record.as_dict())

    def close(self):
        if self.handle:
            self.handle.close()
            self.handle = None

    def _write_line(self, data: dict):
        self.handle.write(json.dumps(data, sort_keys=True) + "\n")
        self.handle.flush()
        os.fsync(self.handle.fileno())

    def _drop_torn_tail(self):
        """Cut a last line that lacks its newline so new records start on a fresh line."""
        content = self.path.read_bytes()
        if content and not content.endswith(b"\n"):
            with open(self.path, "wb") as handle:
                handle.write(content[:content.rfind(b"\n") + 1])

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self.close()
