"""Bernoulli numbers and polynomials, exact.

Convention: B_1 = -1/2, i.e. the numbers are the Taylor coefficients of
x/(e^x - 1) = sum_n B_n x^n / n!.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Fraction(1)
    # sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1
    s = Fraction(0)
    for j in range(n):
        s += comb(n + 1, j) * bernoulli_number(j)
    return -s / (n + 1)


def bernoulli_poly(n: int, x: Fraction) -> Fraction:
    """B_n(x) = sum_k C(n,k) B_k x^(n-k)."""
    x = Fraction(x)
    total = Fraction(0)
    for k in range(n + 1):
        total += comb(n, k) * bernoulli_number(k) * x ** (n - k)
    return total
