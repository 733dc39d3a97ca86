import random
from typing import List
import numpy as np
from Sumprod.Utils.configuration_management import get_config_manager

MASK_64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MULTIPLIER_1 = 0xBF58476D1CE4E5B9
MIX_MULTIPLIER_2 = 0x94D049BB133111EB


def set_seed(seed):
    """
    Sets the random seed for reproducibility of `random` and `numpy.random`.

    Set families never draw from these generators (see SplitMix64); the seed only
    matters for test data and regression runs.
    """
    config_manager = get_config_manager()
    if seed is None:
        seed = random.randint(0, 2 ** 32 - 1)
    config_manager.set_value('seed', value=seed)

    random.seed(seed)
    np.random.seed(seed % 2 ** 32)

    return seed


class SplitMix64:
    """
    Portable 64-bit generator. The same seed yields the same stream on every
    platform and Python version, which keeps random set families byte-stable.
    """

    def __init__(self, seed: int):
        self.state = seed & MASK_64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK_64
        z = self.state
        z = ((z ^ (z >> 30)) * MIX_MULTIPLIER_1) & MASK_64
        z = ((z ^ (z >> 27)) * MIX_MULTIPLIER_2) & MASK_64
        return z ^ (z >> 31)

    def next_below(self, bound: int) -> int:
        """Uniform draw in [0, bound) by rejection sampling."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            value = self.next_u64()
            if value < limit:
                return value % bound

    def sample_distinct(self, count: int, low: int, high: int) -> List[int]:
        """
        Draw `count` distinct integers from [low, high] in generation order.

        Duplicates are rejected and redrawn.
        """
        span = high - low + 1
        if count > span:
            raise ValueError(f"cannot draw {count} distinct values from a range of {span}")
        chosen = []
        seen = set()
        while len(chosen) < count:
            value = low + self.next_below(span)
            if value not in seen:
                seen.add(value)
                chosen.append(value)
        return chosen
