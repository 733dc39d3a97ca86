from pathlib import Path
from typing import List, Sequence, Union
import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.error_management import InsufficientData, InputError
from Sumprod.Utils.configuration_management.enums import ReportFormat
from Sumprod.Tool.sweep_management.records import SweepRecord, FIELDS, KEY_FIELDS, write_records

SVG_HASH_SALT = "sumprod"
MARKER_ID_PREFIX = "record-"


def _as_format(report_format: Union[ReportFormat, str]) -> ReportFormat:
    if isinstance(report_format, ReportFormat):
        return report_format
    # the CLI spells the scatter plot both ways
    return ReportFormat("svg" if report_format == "svg_scatter" else report_format)


def emit_report(records: Sequence[SweepRecord], report_format: Union[ReportFormat, str], out_path: Union[str, Path],
                x_column: str = "n", y_column: str = "aa_plus_a") -> Path:
    """
    Write the records as a sweep CSV, an SVG scatter of y_column against x_column (one marker per
    record) or a text summary table.

    :raises InsufficientData: no records
    :raises OSError: the output path cannot be written
    """
    logger = get_logger()
    if not records:
        raise InsufficientData("no records to report")
    report_format = _as_format(report_format)
    out_path = Path(out_path)
    logger.info(f"---- {report_format.value} report of {len(records)} records to {out_path}")
    if report_format is ReportFormat.CSV:
        write_records(out_path, records)
    elif report_format is ReportFormat.SVG:
        write_scatter(records, out_path, x_column, y_column)
    else:
        out_path.write_text(summary_table(records), encoding="utf-8")
    return out_path


def write_scatter(records: Sequence[SweepRecord], out_path: Path, x_column: str, y_column: str):
    """
    One marker per record, grouped under the id `record-<i>`; records without a numeric value in
    either column keep their slot in the numbering but draw no marker.
    """
    logger = get_logger()
    for column in (x_column, y_column):
        if column not in FIELDS:
            raise InputError(f"unknown column '{column}', expected one of {FIELDS}")
    points = [(index, record.numeric(x_column), record.numeric(y_column)) for index, record in enumerate(records)]
    plotted = [(index, x, y) for index, x, y in points if x is not None and y is not None]
    if len(plotted) < len(points):
        logger.warning(f"{len(points) - len(plotted)} records have no numeric {x_column}/{y_column} and are not drawn")

    with plt.rc_context({"svg.hashsalt": SVG_HASH_SALT, "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(8, 6))
        families = list(dict.fromkeys(record.family for record in records))
        colors = plt.cm.tab10(range(len(families)))
        color_of = dict(zip(families, colors))
        labelled = set()
        for index, x, y in plotted:
            family = records[index].family
            ax.plot([x], [y], marker="o", linestyle="", color=color_of[family], gid=f"{MARKER_ID_PREFIX}{index}",
                    label=None if family in labelled else family)
            labelled.add(family)
        if plotted and all(x > 0 and y > 0 for _, x, y in plotted):
            ax.set_xscale("log")
            ax.set_yscale("log")
        ax.set_xlabel(x_column)
        ax.set_ylabel(y_column)
        if labelled:
            ax.legend()
        fig.tight_layout()
        fig.savefig(out_path, format="svg", metadata={"Date": None})
        plt.close(fig)


def summary_table(records: Sequence[SweepRecord]) -> str:
    """Fixed-width table of the key columns and every measurement column used by some record."""
    columns = KEY_FIELDS + [column for column in FIELDS[len(KEY_FIELDS):]
                            if any(record.get(column) for record in records)]
    rows: List[List[str]] = [columns] + [[record.get(column) for column in columns] for record in records]
    widths = [max(len(row[position]) for row in rows) for position in range(len(columns))]
    lines = ["  ".join(cell.rjust(width) for cell, width in zip(row, widths)) for row in rows]
    lines.insert(1, "  ".join("-" * width for width in widths))
    limited = sum(record.resource_limited for record in records)
    lines.append("")
    lines.append(f"{len(records)} records, {limited} with resource-limited cells")
    return "\n".join(lines) + "\n"
