from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable


def binomial(n: int, k: int) -> int:
    # C(n, k), zero outside 0 <= k <= n
    if k < 0 or k > n:
        return 0
    return comb(n, k)


@lru_cache(maxsize=None)
def _multinomial(parts: tuple[int, ...]) -> int:
    result = 1
    remaining = sum(parts)
    for part in parts:
        result *= binomial(remaining, part)
        remaining -= part
    return result


def multinomial(parts: Iterable[int]) -> int:
    """(sum parts)! / prod(parts!) as an iterated binomial product."""
    parts = tuple(parts)
    if any(part < 0 for part in parts):
        return 0
    return _multinomial(parts)


def rational_power(base: Fraction | int, exp: int) -> Fraction:
    # exp == 0 gives 1 even for base 0: an empty component contributes 1
    if exp == 0:
        return Fraction(1)
    return Fraction(base) ** exp


def power_bound(a: int, b: int) -> Fraction:
    """(a+b)^(a+b) / (a^a b^b) with 0^0 = 1."""
    return Fraction((a + b) ** (a + b), (a**a) * (b**b))
