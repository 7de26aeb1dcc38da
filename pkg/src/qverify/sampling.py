"""Reproducible rational sample points.

A fixed 32-bit linear congruential generator, so a (seed, label) pair gives
the same points on every platform and Python version.
"""

from __future__ import annotations

import zlib
from math import prod
from fractions import Fraction

_A, _C, _MOD = 1664525, 1013904223, 1 << 32


class Lcg:
    def __init__(self, seed: int, label: str = ""):
        self.state = (int(seed) ^ zlib.crc32(label.encode())) % _MOD

    def next(self) -> int:
        self.state = (_A * self.state + _C) % _MOD
        return self.state >> 8  # low bits of an LCG cycle with short periods

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.next() % (hi - lo + 1)

    def rational(self, lo: int = 2, hi: int = 97, signed: bool = True) -> Fraction:
        num = self.randint(lo, hi)
        den = self.randint(lo, hi)
        if signed and self.next() & 1:
            num = -num
        return Fraction(num, den)

    def rational_avoiding(self, bad, **kw) -> Fraction:
        while True:
            v = self.rational(**kw)
            if v not in bad:
                return v


def weight_vector(m: int, seed: int, label: str) -> tuple:
    """3m weights with -1 at every third slot, for the 3m-index cyclic family."""
    rng = Lcg(seed, label)
    out = []
    for k in range(3 * m):
        out.append(-1 if k % 3 == 2 else rng.rational_avoiding({0}))
    return tuple(out)


def cyclic_points(m: int, count: int, seed: int, label: str, face: int = 1) -> list[tuple]:
    """``count`` distinct points in Q^m avoiding x_k = -1; the last ``face`` have product 1."""
    if m == 1 and face > 1:
        raise ValueError("the product-one face of Q^1 is the single point 1")
    rng = Lcg(seed, label)
    pts = []
    while len(pts) < count - face:
        p = tuple(rng.rational_avoiding({-1, 0}) for _ in range(m))
        if p not in pts and prod(p) != 1:  # product-one points are kept for the face
            pts.append(p)
    while len(pts) < count:
        head = [rng.rational_avoiding({-1, 0}) for _ in range(m - 1)]
        last = Fraction(1) / prod(head)
        if last != -1 and tuple(head) + (last,) not in pts:
            pts.append(tuple(head) + (last,))
    return pts
