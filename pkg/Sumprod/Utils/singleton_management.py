from typing import Any, Callable


class SingletonManager:
    """
    A lightweight registry for process-wide singletons (logger, config, knobs, statistics).

    Each manager module exposes a `get_xxx()` factory that goes through this registry,
    so tests can wipe every piece of global state with a single `reset()`.
    """

    _instances = {}

    @classmethod
    def get_or_create(cls, key: str, factory: Callable[[], Any]) -> Any:
        """
        Return the singleton stored under `key`, building it with `factory` on first use.

        Args:
            key (str): The key of the singleton variable.
            factory (Callable): Zero-argument constructor used when the key is missing.

        Returns:
            Any: The stored (or freshly created) instance.
        """
        instance = cls._instances.get(key)
        if instance is None:
            instance = factory()
            cls._instances[key] = instance
        return instance

    @classmethod
    def reset(cls):
        cls._instances.clear()
