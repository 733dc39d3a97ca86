from functools import lru_cache
from math import isqrt, log, log2, sqrt, prod
from typing import Tuple
import numpy as np
from Sumprod.Utils.configuration_management.enums import LogBase


@lru_cache(maxsize=None)
def primes_below(y: int) -> Tuple[int, ...]:
    """All primes p < y, by a numpy sieve."""
    if y <= 2:
        return ()
    is_prime = np.ones(y, dtype=bool)
    is_prime[:2] = False
    for p in range(2, isqrt(y - 1) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return tuple(np.flatnonzero(is_prime).tolist())


def is_prime(n: int) -> bool:
    if n < 2 or (n > 2 and n % 2 == 0):
        return False
    for i in range(3, isqrt(n) + 1, 2):
        if n % i == 0:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    candidate = n + 1
    while not is_prime(candidate):
        candidate += 1
    return candidate


def primorial(y: int) -> int:
    return prod(primes_below(y))


def f_value(x: int, y: int) -> int:
    """Number of distinct primes p < y dividing x. Periodic with period primorial(y)."""
    return sum(1 for p in primes_below(y) if x % p == 0)


def g_value(x: int, y: int) -> int:
    """Sum over primes p < y of min(v_p(x), 2). Periodic with period primorial(y)^2."""
    return sum((x % p == 0) + (x % (p * p) == 0) for p in primes_below(y))


def f_values(xs: np.ndarray, y: int) -> np.ndarray:
    result = np.zeros(len(xs), dtype=np.int16)
    for p in primes_below(y):
        result += (xs % p == 0)
    return result


def g_values(xs: np.ndarray, y: int) -> np.ndarray:
    result = np.zeros(len(xs), dtype=np.int16)
    for p in primes_below(y):
        result += (xs % p == 0)
        result += (xs % (p * p) == 0)
    return result


def log_log(y: int, log_base: str) -> float:
    if LogBase(log_base) is LogBase.BINARY:
        return log2(log2(y))
    return log(log(y))


def selection_threshold(y: int, log_base: str) -> float:
    """
    loglog y - 2 sqrt(loglog y). For y = 2 the double logarithm is not positive and the
    square-root term is taken as 0.
    """
    level = log_log(y, log_base)
    return level - 2 * sqrt(level) if level > 0 else level


def moment_threshold(y: int, log_base: str) -> float:
    """2 loglog y - 4 sqrt(loglog y), twice the selection threshold."""
    return 2 * selection_threshold(y, log_base)
