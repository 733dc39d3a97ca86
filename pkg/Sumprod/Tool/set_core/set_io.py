from pathlib import Path
from typing import Union
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.error_management import EmptySet, InputFormat
from Sumprod.Tool.set_core.exact_scalar import parse_scalar, format_scalar
from Sumprod.Tool.set_core.finite_set import FiniteSet, make_set


def read_set_file(path: Union[str, Path]) -> FiniteSet:
    """
    Read a set file: UTF-8 text, one signed integer or "p/q" per line.
    Blank lines and lines starting with '#' are skipped.

    :raises InputFormat: missing file or a malformed line (with its 1-based line number)
    :raises EmptySet: when the file holds no element
    """
    logger = get_logger()
    path = Path(path)
    logger.debug(f"reading set file {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputFormat(path, 0, "file not found")
    except UnicodeDecodeError as e:
        raise InputFormat(path, 0, f"not UTF-8 text ({e.reason})")

    values = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            values.append(parse_scalar(stripped))
        except ValueError as e:
            raise InputFormat(path, line_number, str(e))
    if not values:
        raise EmptySet(f"{path} contains no elements")
    return make_set(values)


def write_set_file(path: Union[str, Path], A: FiniteSet, comment: str = None):
    path = Path(path)
    lines = [f"# {comment}"] if comment else []
    lines.extend(format_scalar(value) for value in A)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    get_logger().debug(f"wrote {len(A)} elements to {path}")
