"""Gaussian binomials, q-Pochhammer products and ordinary binomials."""

from __future__ import annotations

import math
from functools import lru_cache

from .exact import ONE, ZERO, LaurentPoly


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"upper index must be a nonnegative int, got {n!r}")


@lru_cache(maxsize=None)
def _gauss(n: int, k: int) -> LaurentPoly:
    if k < 0 or k > n:
        return ZERO
    if k == 0 or k == n:
        return ONE
    # [n, k] = [n-1, k-1] + q^k [n-1, k]
    return _gauss(n - 1, k - 1) + _gauss(n - 1, k).shift(k)


def gauss_binomial(n: int, k: int) -> LaurentPoly:
    """The Gaussian binomial ``[n, k]`` in ``q``; zero unless ``0 <= k <= n``.

    Results are memoised process-wide (``lru_cache`` is safe under threads, and
    each worker process fills its own table).
    """
    _check_n(n)
    if k < 0 or k > n:
        return ZERO
    # fill lower rows first so the recursion depth stays bounded for large n
    for i in range(256, n, 256):
        for j in range(max(0, k - (n - i)), min(k, i) + 1):
            _gauss(i, j)
    return _gauss(n, k)


def gauss_binomial_alt(n: int, k: int) -> LaurentPoly:
    """Same polynomial through the other Pascal rule: [n, k] = q^(n-k) [n-1, k-1] + [n-1, k]."""
    _check_n(n)
    if k < 0 or k > n:
        return ZERO
    if k == 0 or k == n:
        return ONE
    return gauss_binomial(n - 1, k - 1).shift(n - k) + gauss_binomial(n - 1, k)


def q_monomial(exponent: int, coeff=1) -> LaurentPoly:
    return LaurentPoly.monomial(exponent, coeff)


def q_binom2(k: int) -> LaurentPoly:
    """``q**(k choose 2)``; valid for negative ``k`` too since k(k-1)/2 is integral."""
    return LaurentPoly.monomial(k * (k - 1) // 2)


def q_pochhammer_power(alpha: int, n: int) -> LaurentPoly:
    """``(q^alpha; q)_n = prod_{i<n} (1 - q^(alpha+i))``."""
    _check_n(n)
    out = ONE
    for i in range(n):
        e = alpha + i
        if e == 0:
            return ZERO
        out = out * LaurentPoly({0: 1, e: -1})
    return out


def binomial(n: int, k: int) -> int:
    _check_n(n)
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def binom2(k: int) -> int:
    """k choose 2 as a plain integer, for any integer k."""
    return k * (k - 1) // 2
