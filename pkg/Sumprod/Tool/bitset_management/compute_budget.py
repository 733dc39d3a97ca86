from Sumprod.Utils.configuration_management import knob_value

# Rough per-item working-state costs used by the budget checks.
NUMPY_PAIR_BYTES = 24
PYTHON_PAIR_BYTES = 72
FFT_BYTES_PER_SLOT = 48


class ComputeBudget:
    """
    The knobs that govern fast paths and memory, captured once so they can be handed
    explicitly to worker processes and partitioned computations.
    """

    def __init__(self, memory_budget_bytes: int, streamed_count: bool, int_fast_path_max_range: int,
                 int_fast_path_max_magnitude: int, partition_count: int, workers: int):
        self.memory_budget_bytes = memory_budget_bytes
        self.streamed_count = streamed_count
        self.int_fast_path_max_range = int_fast_path_max_range
        self.int_fast_path_max_magnitude = int_fast_path_max_magnitude
        self.partition_count = max(1, partition_count)
        self.workers = max(1, workers)

    @classmethod
    def from_knobs(cls) -> "ComputeBudget":
        return cls(memory_budget_bytes=knob_value('memory_budget_bytes'),
                   streamed_count=knob_value('streamed_count'),
                   int_fast_path_max_range=knob_value('int_fast_path_max_range'),
                   int_fast_path_max_magnitude=knob_value('int_fast_path_max_magnitude'),
                   partition_count=knob_value('partition_count'),
                   workers=knob_value('workers'))

    def fits_int64(self, magnitude: int) -> bool:
        return magnitude <= self.int_fast_path_max_magnitude

    def fits_memory(self, required_bytes: int) -> bool:
        return required_bytes <= self.memory_budget_bytes

    def __repr__(self):
        return (f"ComputeBudget(memory={self.memory_budget_bytes}, streamed={self.streamed_count}, "
                f"range={self.int_fast_path_max_range}, magnitude={self.int_fast_path_max_magnitude}, "
                f"partitions={self.partition_count}, workers={self.workers})")


def resolve_budget(budget: ComputeBudget = None) -> ComputeBudget:
    return budget if budget is not None else ComputeBudget.from_knobs()
