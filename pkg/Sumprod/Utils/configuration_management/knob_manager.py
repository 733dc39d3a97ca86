from typing import Callable, Any, Dict, Union
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.singleton_management import SingletonManager
from Sumprod.Utils.error_management import ConfigError


class Knob:
    def __init__(self, name: str, value_func: Union[Callable[[], Any], Any], value_type: Callable[[Any], Any] = None,
                 read_only: bool = True, dynamic: bool = False, description: str = None):
        """
        Initialize a knob.

        :param name: Name of the knob.
        :param value_func: Default value, or a function evaluating it.
        :param value_type: Converter applied to overrides (command line values arrive as strings).
        :param read_only: Whether the knob can be modified once sealed.
        :param dynamic: Whether the knob's value should be evaluated every time it is accessed.
        :param description: Knob description, shown by `--list-knobs`.
        """
        self.name = name
        self.value_func = value_func
        self.value_type = value_type
        self.read_only = read_only
        self.dynamic = dynamic
        self.value_cache = None
        self.sealed = False
        self.description = description

    def get_value(self) -> Any:
        """Evaluate and return the knob's value."""
        if self.dynamic:
            return self.value_func() if callable(self.value_func) else self.value_func
        if self.value_cache is None:
            self.value_cache = self.value_func() if callable(self.value_func) else self.value_func
        return self.value_cache

    def set_value(self, new_value: Any):
        """Set a new value for the knob if it is not sealed read-only."""
        if self.sealed and self.read_only:
            raise ConfigError(f"Knob '{self.name}' is read-only and cannot be modified.")
        if self.value_type is not None and isinstance(new_value, str):
            try:
                new_value = self.value_type(new_value)
            except ValueError as e:
                raise ConfigError(f"Invalid value '{new_value}' for knob '{self.name}': {e}") from e
        self.value_func = new_value
        if not self.dynamic:
            self.value_cache = new_value

    def seal(self):
        self.sealed = True

    def __bool__(self):
        return bool(self.get_value())

    def __int__(self):
        return int(self.get_value())

    def __repr__(self):
        return f"<Knob(name={self.name}, value={self.get_value()}, read_only={self.read_only}, dynamic={self.dynamic})>"


class KnobManager:

    def __init__(self):
        logger = get_logger()
        logger.debug("======================== KnobManager")
        self.knobs: Dict[str, Knob] = {}

    def add_knob(self, knob: Knob):
        self.knobs[knob.name] = knob

    def get_knob(self, knob_name: str) -> Knob:
        if knob_name in self.knobs:
            return self.knobs[knob_name]
        raise ConfigError(f"No knob found with the name: {knob_name}")

    def override_knob(self, name, new_value):
        """Override the value of a knob. Unknown names raise ConfigError."""
        self.get_knob(name).set_value(new_value)

    def seal_all(self):
        logger = get_logger()
        for knob in self.knobs.values():
            logger.debug(f"KNOBS INFO: {knob.name} = {knob.get_value()}")
            knob.seal()

    def evaluate_knob(self, name):
        return self.get_knob(name).get_value()

    def snapshot(self) -> Dict[str, Any]:
        """Plain dict of all knob values, e.g. to ship budgets into worker processes."""
        return {name: knob.get_value() for name, knob in sorted(self.knobs.items())}


def _build_knob_manager() -> KnobManager:
    from Sumprod.Utils.configuration_management.knobs import default_knobs
    manager = KnobManager()
    for knob in default_knobs():
        manager.add_knob(knob)
    return manager


def get_knob_manager() -> KnobManager:
    return SingletonManager.get_or_create("knob_manager_instance", _build_knob_manager)


def knob_value(name: str) -> Any:
    """Shortcut for `get_knob_manager().evaluate_knob(name)`."""
    return get_knob_manager().evaluate_knob(name)
