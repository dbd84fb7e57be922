"""Divisors and the Moebius function"""

from functools import lru_cache
from typing import Dict, List

import sympy

from regular_loops.errors import InvalidInputError


def _require_positive(m: int) -> None:
    if m < 1:
        raise InvalidInputError(f"expected a positive integer, got {m}")


def factorize(m: int) -> Dict[int, int]:
    _require_positive(m)
    return {int(p): int(e) for p, e in sympy.factorint(m).items()}


@lru_cache(maxsize=4096)
def mobius(m: int) -> int:
    factors = factorize(m)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


@lru_cache(maxsize=4096)
def _divisors(m: int) -> tuple:
    return tuple(int(q) for q in sympy.divisors(m))


def divisors(m: int) -> List[int]:
    _require_positive(m)
    return list(_divisors(m))
