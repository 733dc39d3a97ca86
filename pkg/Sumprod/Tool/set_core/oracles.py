"""
Brute-force enumerations over Python sets and Counters, used to cross-check the fast paths.
"""
from collections import Counter
from typing import FrozenSet, Union
from fractions import Fraction
from Sumprod.Utils.configuration_management import knob_value
from Sumprod.Utils.error_management import ResourceLimit, DivisorZero, ZeroInMultiplicativeEnergy
from Sumprod.Utils.configuration_management.enums import BinaryOp, EnergyKind
from Sumprod.Tool.set_core.finite_set import FiniteSet


def _guard(*sets: FiniteSet):
    limit = knob_value('oracle_max_size')
    largest = max(len(s) for s in sets)
    if largest > limit:
        raise ResourceLimit("set too large for a brute-force oracle", required=largest, budget=limit)


def _apply(op: BinaryOp, a: Fraction, b: Fraction) -> Fraction:
    if op is BinaryOp.SUM:
        return a + b
    if op is BinaryOp.DIFFERENCE:
        return a - b
    if op is BinaryOp.PRODUCT:
        return a * b
    return a / b


def brute_binary_op(op: Union[BinaryOp, str], A: FiniteSet, B: FiniteSet) -> FrozenSet[Fraction]:
    op = op if isinstance(op, BinaryOp) else BinaryOp(op)
    _guard(A, B)
    if op is BinaryOp.RATIO and 0 in B:
        raise DivisorZero("ratio set with 0 in the divisor set")
    return frozenset(_apply(op, a, b) for a in A for b in B)


def brute_combine(A: FiniteSet, B: FiniteSet, C: FiniteSet) -> FrozenSet[Fraction]:
    _guard(A, B, C)
    return frozenset(a * b + c for a in A for b in B for c in C)


def brute_energy(kind: Union[EnergyKind, str], A: FiniteSet, B: FiniteSet = None) -> int:
    """Counts quadruples directly: a + b = a' + b' (or ab = a'b')."""
    kind = kind if isinstance(kind, EnergyKind) else EnergyKind(kind)
    B = A if B is None else B
    _guard(A, B)
    if kind is EnergyKind.MULTIPLICATIVE:
        if 0 in A or 0 in B:
            raise ZeroInMultiplicativeEnergy("multiplicative energy is not defined with 0 in the set")
        representations = Counter(a * b for a in A for b in B)
    else:
        representations = Counter(a + b for a in A for b in B)
    return sum(count * count for count in representations.values())
