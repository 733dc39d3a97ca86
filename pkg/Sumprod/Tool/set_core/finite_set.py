from bisect import bisect_left
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Tuple, Union
from Sumprod.Utils.error_management import EmptySet
from Sumprod.Utils.configuration_management.enums import SignSummary
from Sumprod.Tool.set_core.exact_scalar import to_scalar, format_scalar, common_scale


class FiniteSet:
    """
    Immutable, strictly increasing, duplicate-free sequence of exact rationals.

    Build it with `make_set`; the constructor trusts that `elements` is already sorted and unique.
    """

    __slots__ = ("_elements", "_sign_summary", "_scaled", "_hash")

    def __init__(self, elements: Tuple[Fraction, ...]):
        if not elements:
            raise EmptySet("a FiniteSet needs at least one element")
        self._elements = elements
        self._sign_summary = _sign_summary_of(elements)
        self._scaled = None
        self._hash = None

    @classmethod
    def from_scaled(cls, scale: int, sorted_ints: Iterable[int]) -> "FiniteSet":
        """Set of int / scale for strictly increasing ints and scale > 0."""
        if scale == 1:
            elements = tuple(Fraction(value) for value in sorted_ints)
        else:
            elements = tuple(Fraction(value, scale) for value in sorted_ints)
        instance = cls(elements)
        if scale == 1:
            instance._scaled = (1, tuple(value.numerator for value in elements))
        return instance

    @property
    def elements(self) -> Tuple[Fraction, ...]:
        return self._elements

    @property
    def sign_summary(self) -> SignSummary:
        return self._sign_summary

    @property
    def is_integral(self) -> bool:
        return self.scaled()[0] == 1

    @property
    def is_positive(self) -> bool:
        return self._sign_summary is SignSummary.ALL_POSITIVE

    @property
    def min(self) -> Fraction:
        return self._elements[0]

    @property
    def max(self) -> Fraction:
        return self._elements[-1]

    def scaled(self) -> Tuple[int, Tuple[int, ...]]:
        """(scale, ints) with element == int / scale; cached."""
        if self._scaled is None:
            self._scaled = common_scale(self._elements)
        return self._scaled

    def as_ints(self) -> Tuple[int, ...]:
        scale, ints = self.scaled()
        if scale != 1:
            raise ValueError("set has non-integral elements")
        return ints

    def dilate(self, factor: Union[int, Fraction]) -> "FiniteSet":
        factor = to_scalar(factor)
        if factor == 0:
            return FiniteSet((Fraction(0),))
        dilated = tuple(factor * value for value in self._elements)
        return FiniteSet(dilated if factor > 0 else dilated[::-1])

    def negate(self) -> "FiniteSet":
        return self.dilate(-1)

    def min_gap(self) -> Optional[Fraction]:
        """Smallest difference of consecutive elements; None for a singleton."""
        if len(self._elements) < 2:
            return None
        return min(b - a for a, b in zip(self._elements, self._elements[1:]))

    def index(self, value) -> int:
        value = to_scalar(value)
        position = bisect_left(self._elements, value)
        if position == len(self._elements) or self._elements[position] != value:
            raise ValueError(f"{format_scalar(value)} is not in the set")
        return position

    def __contains__(self, value) -> bool:
        try:
            self.index(value)
        except (ValueError, TypeError):
            return False
        return True

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._elements)

    def __getitem__(self, position):
        return self._elements[position]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteSet):
            return NotImplemented
        return self._elements == other._elements

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._elements)
        return self._hash

    def __repr__(self):
        shown = ", ".join(format_scalar(value) for value in self._elements[:8])
        if len(self._elements) > 8:
            shown += f", ... ({len(self._elements)} elements)"
        return f"FiniteSet({{{shown}}}, {self._sign_summary.value})"


def _sign_summary_of(elements: Tuple[Fraction, ...]) -> SignSummary:
    if elements[0] > 0:
        return SignSummary.ALL_POSITIVE
    if elements[-1] < 0:
        return SignSummary.ALL_NEGATIVE
    if elements[bisect_left(elements, 0)] == 0:
        return SignSummary.CONTAINS_ZERO
    return SignSummary.MIXED


def make_set(values: Iterable) -> FiniteSet:
    """
    Build a FiniteSet from ints, Fractions or "p/q" strings: sorted, deduplicated,
    sign summary computed.

    :raises EmptySet: when `values` is empty
    """
    if isinstance(values, FiniteSet):
        return values
    elements = tuple(sorted({to_scalar(value) for value in values}))
    if not elements:
        raise EmptySet("cannot build a set from no values")
    return FiniteSet(elements)
