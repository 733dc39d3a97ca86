import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Tuple, Union

# Element type of every set: canonical reduced rational, denominator > 0.
ExactScalar = Fraction

_SCALAR_PATTERN = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_scalar(text: str) -> Fraction:
    """
    Parse an optionally signed integer or a "p/q" rational with q > 0.

    Decimals, exponents, whitespace inside the token and thousands separators are rejected.

    :raises ValueError: on malformed text or a zero denominator
    """
    match = _SCALAR_PATTERN.match(text.strip())
    if match is None:
        raise ValueError(f"not an integer or p/q rational: '{text.strip()}'")
    numerator = int(match.group(1))
    if match.group(2) is None:
        return Fraction(numerator)
    denominator = int(match.group(2))
    if denominator == 0:
        raise ValueError(f"zero denominator in '{text.strip()}'")
    return Fraction(numerator, denominator)


def to_scalar(value: Union[int, Fraction, str]) -> Fraction:
    """Coerce ints, Fractions and their text forms; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not set elements")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"exact scalars are built from int, Fraction or str, got {type(value).__name__}")


def format_scalar(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def common_scale(values: Iterable[Fraction]) -> Tuple[int, Tuple[int, ...]]:
    """
    Bring rationals to a common denominator.

    Returns (scale, ints) with value == int / scale for each element; scale is the lcm of
    the denominators, so an integral input has scale 1.
    """
    values = tuple(values)
    scale = lcm(*(value.denominator for value in values)) if values else 1
    return scale, tuple(value.numerator * (scale // value.denominator) for value in values)
