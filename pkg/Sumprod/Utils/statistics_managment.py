from collections import defaultdict
from Sumprod.Utils.singleton_management import SingletonManager


class StatisticsCounter:
    """
    Run counters: measured cells, resource-limited cells, streamed counts, fast-path hits.
    """

    def __init__(self):
        self._counters = defaultdict(int)

    def increment(self, key, amount=1):
        self._counters[key] += amount

    def get(self, key):
        return self._counters[key]

    def all(self):
        return dict(sorted(self._counters.items()))

    def merge(self, counters: dict):
        """Fold counters reported by a worker process into this one."""
        for key, amount in counters.items():
            self._counters[key] += amount

    def reset(self, key=None):
        if key:
            self._counters[key] = 0
        else:
            self._counters.clear()


def get_statistics_manager() -> StatisticsCounter:
    return SingletonManager.get_or_create("statistics_manager_instance", StatisticsCounter)
