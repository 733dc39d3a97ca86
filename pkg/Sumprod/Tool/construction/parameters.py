from typing import Optional
from Sumprod.Utils.logger_management import get_logger
from Sumprod.Utils.error_management import NoValidPrimorial
from Sumprod.Utils.configuration_management import knob_value
from Sumprod.Tool.construction.arithmetic_functions import primes_below, next_prime, primorial, selection_threshold


class ConstructionParams:
    """
    Parameters of the small |AA+mA| construction.

    q is the product of the primes below y and m = q^2. `theta` is the selection threshold in use;
    `formula_theta` is loglog y - 2 sqrt(loglog y) whatever the override.
    """

    def __init__(self, n: int, y: int, theta: Optional[float] = None, log_base: str = None):
        self.n = n
        self.y = y
        self.log_base = log_base if log_base is not None else knob_value('log_base')
        self.primes = primes_below(y)
        self.q = primorial(y)
        self.m = self.q * self.q
        self.formula_theta = selection_threshold(y, self.log_base)
        self.overridden = theta is not None
        self.theta = theta if self.overridden else self.formula_theta

    def with_theta(self, theta: Optional[float]) -> "ConstructionParams":
        return ConstructionParams(self.n, self.y, theta, self.log_base)

    def __repr__(self):
        return (f"ConstructionParams(n={self.n}, y={self.y}, q={self.q}, m={self.m}, theta={self.theta:.6f}, "
                f"overridden={self.overridden}, log_base={self.log_base})")


def choose_parameters(n: int, log_base: str = None) -> ConstructionParams:
    """
    Largest primorial q with q^2 < n; y is the prime right after q's largest prime factor,
    the smallest bound giving that q.

    :raises NoValidPrimorial: for n < 5 (the smallest primorial 2 needs n > 4)
    """
    logger = get_logger()
    q, largest_prime, candidate = 1, None, 2
    while (q * candidate) ** 2 < n:
        q *= candidate
        largest_prime = candidate
        candidate = next_prime(candidate)
    if largest_prime is None:
        raise NoValidPrimorial(f"no primorial q with q^2 < {n}; n must be at least 5")
    params = ConstructionParams(n, next_prime(largest_prime), log_base=log_base)
    logger.debug(f"choose_parameters({n}) -> {params}")
    return params
