import random
import numpy as np
import pytest
from Sumprod.Utils.singleton_management import SingletonManager
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Tool.bitset_management.compute_budget import ComputeBudget
from Sumprod.Tool.set_core.finite_set import make_set


@pytest.fixture(autouse=True)
def fresh_singletons():
    """Every test starts with a new logger, config, knobs and statistics."""
    get_logger(get_manager=True).clean_logger()
    SingletonManager.reset()
    get_logger(get_manager=True).echo_to_console = False
    yield
    get_logger(get_manager=True).clean_logger()
    SingletonManager.reset()


@pytest.fixture
def rng():
    random.seed(1234)
    np.random.seed(1234)
    return random.Random(1234)


@pytest.fixture
def budget():
    """Factory for a ComputeBudget with generous defaults and the given overrides."""

    def _budget(**overrides) -> ComputeBudget:
        values = dict(memory_budget_bytes=8 * 1024 ** 3, streamed_count=True, int_fast_path_max_range=2 ** 31,
                      int_fast_path_max_magnitude=2 ** 62, partition_count=16, workers=1)
        values.update(overrides)
        return ComputeBudget(**values)

    return _budget


@pytest.fixture
def random_set(rng):
    """Factory for a random set of positive integers."""

    def _random_set(size: int, top: int):
        return make_set(rng.sample(range(1, top + 1), size))

    return _random_set
