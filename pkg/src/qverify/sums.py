"""Cyclic multi-sums over tuples (r_1..r_m) with the wrap r_{m+1} = r_1.

Every summand carries the product of ``[n - r_k, r_{k+1}]`` (Gaussian or
ordinary binomials), so a tuple contributes only when ``r_k + r_{k+1} <= n``
for all k cyclically.  The enumerator walks exactly those tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import PoleAtMinusOne
from .exact import ONE, ZERO, LaurentPoly, _div
from .qkernel import binom2, binomial, gauss_binomial


@dataclass(frozen=True)
class ExponentRule:
    """q-exponent attached to the link (r_k, r_{k+1}).

    With ``j = r - shift`` the exponent is ``cross*j_k*j_{k+1} + binom(j_k + offset, 2)``.
    The default is the plain ``binom(r_k, 2)``.
    """

    cross: int = 0
    shift: int = 0
    offset: int = 0

    def __call__(self, r: int, r_next: int) -> int:
        j, j_next = r - self.shift, r_next - self.shift
        return self.cross * j * j_next + binom2(j + self.offset)


BINOM_RULE = ExponentRule()


@dataclass(frozen=True)
class CyclicSumSpec:
    """A cyclic q-multi-sum.

    ``weights[k]`` is raised to ``r_k``; ``signs[k]`` toggles ``(-1)^{r_k}``;
    ``refinement = (z, s)`` multiplies each summand by ``z^{r_1 - r_s}`` (s is 1-based).
    """

    m: int
    n: int
    weights: tuple = None
    exponent: ExponentRule = BINOM_RULE
    signs: tuple = None
    refinement: tuple | None = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.n < 0:
            raise ValueError("n must be >= 0")
        weights = (1,) * self.m if self.weights is None else tuple(self.weights)
        signs = (False,) * self.m if self.signs is None else tuple(bool(s) for s in self.signs)
        if len(weights) != self.m or len(signs) != self.m:
            raise ValueError("weights and signs need one entry per index")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "signs", signs)
        if self.refinement is not None:
            z, s = self.refinement
            if not 1 <= s <= self.m:
                raise ValueError(f"refinement site s={s} outside 1..{self.m}")
            if z == 0:
                raise ValueError("refinement variable z must be nonzero")

    def effective_weights(self) -> tuple:
        """Per-index scalars with signs and the z-refinement folded in."""
        w = [-x if s else x for x, s in zip(self.weights, self.signs)]
        if self.refinement is not None:
            z, s = self.refinement
            if s != 1:
                w[0] = w[0] * z
                w[s - 1] = _div(w[s - 1], z)
        return tuple(w)


def enumerate_support(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """Yield, in lexicographic order, every tuple with r_k + r_{k+1} <= n cyclically."""
    if n < 0 or m < 1:
        raise ValueError("need n >= 0 and m >= 1")
    r = [0] * m

    def walk(depth: int, prev: int):
        hi = n - prev
        if depth == m - 1:
            hi = min(hi, n - r[0])
        for v in range(hi + 1):
            r[depth] = v
            if depth == m - 1:
                yield tuple(r)
            else:
                yield from walk(depth + 1, v)

    for r1 in range(n + 1):
        if m == 1:
            if 2 * r1 <= n:
                yield (r1,)
            continue
        r[0] = r1
        yield from walk(1, r1)


def support_count_bruteforce(n: int, m: int) -> int:
    """Reference count over all (n+1)^m tuples; only for tests and cross-checks."""
    from itertools import product

    return sum(
        1
        for r in product(range(n + 1), repeat=m)
        if all(r[k] + r[(k + 1) % m] <= n for k in range(m))
    )


def _power_table(w, n: int) -> list:
    out = [1]
    for _ in range(n):
        out.append(out[-1] * w)
    return out


def _q_stratum(spec: CyclicSumSpec, r1: int, weights: tuple, acc: dict) -> None:
    n, m, rule = spec.n, spec.m, spec.exponent
    pw = [_power_table(w, n) for w in weights]
    links: dict[tuple[int, int], LaurentPoly] = {}

    def link(a: int, b: int) -> LaurentPoly:
        p = links.get((a, b))
        if p is None:
            p = gauss_binomial(n - a, b).shift(rule(a, b))
            links[(a, b)] = p
        return p

    def leaf(poly: LaurentPoly, scal) -> None:
        if scal == 0:
            return
        for e, c in poly._terms.items():
            v = acc.get(e, 0) + c * scal
            acc[e] = v

    def walk(depth: int, prev: int, poly: LaurentPoly, scal) -> None:
        hi = n - prev
        last = depth == m - 1
        if last:
            hi = min(hi, n - r1)
        for v in range(hi + 1):
            p = poly * link(prev, v)
            s = scal * pw[depth][v]
            if last:
                leaf(p * link(v, r1), s)
            else:
                walk(depth + 1, v, p, s)

    if m == 1:
        if 2 * r1 <= n:
            leaf(link(r1, r1), pw[0][r1])
        return
    walk(1, r1, ONE, pw[0][r1])


def eval_cyclic_q_sum(spec: CyclicSumSpec) -> LaurentPoly:
    """Exact value of sum_r prod_k [n-r_k, r_{k+1}] q^{rule(r_k, r_{k+1})} w_k^{r_k}.

    Scalars may be ints, Fractions or :class:`QuadExt`; q stays symbolic.
    """
    weights = spec.effective_weights()
    acc: dict = {}
    for r1 in range(spec.n + 1):
        _q_stratum(spec, r1, weights, acc)
    return LaurentPoly(acc)


def eval_chain_q_sum(n: int, length: int, end: int, weights=None, rule: ExponentRule = BINOM_RULE) -> LaurentPoly:
    """Open-chain analogue: r_1..r_length summed, r_{length+1} = ``end`` held fixed.

    Summand is prod_{k<=length} [n-r_k, r_{k+1}] q^{rule(r_k, r_{k+1})} w_k^{r_k}.
    """
    if not 0 <= end <= n:
        raise ValueError("end index must lie in 0..n")
    weights = (1,) * length if weights is None else tuple(weights)
    pw = [_power_table(w, n) for w in weights]
    total = ZERO

    def walk(depth: int, prev: int, poly: LaurentPoly, scal):
        nonlocal total
        if depth == length:
            link = gauss_binomial(n - prev, end).shift(rule(prev, end))
            total = total + (poly * link).scale(scal)
            return
        for v in range(n - prev + 1):
            walk(depth + 1, v, poly * gauss_binomial(n - prev, v).shift(rule(prev, v)), scal * pw[depth][v])

    for r1 in range(n + 1):
        walk(1, r1, ONE, pw[0][r1])
    return total


def eval_cyclic_binomial_sum(n: int, weights) -> object:
    """q = 1 shadow: sum_r prod_k C(n-r_k, r_{k+1}) w_k^{r_k} over tuples of length len(weights)."""
    m = len(weights)
    pw = [_power_table(w, n) for w in weights]
    total = 0
    for r in enumerate_support(n, m):
        term = 1
        for k in range(m):
            term = term * binomial(n - r[k], r[(k + 1) % m]) * pw[k][r[k]]
            if term == 0:
                break
        total = total + term
    return total


def eval_cyclic_rational_sum(spec: CyclicSumSpec, x) -> object:
    """sum_r prod_k C(n-r_k, r_{k+1}) (-x_k)^{r_k} / (1+x_k)^{r_k + r_{k+1}}.

    ``spec`` supplies ``n`` and ``m``; its q-rule and weights are ignored.
    """
    n, m = spec.n, spec.m
    x = tuple(x)
    if len(x) != m:
        raise ValueError(f"need {m} values of x, got {len(x)}")
    for xk in x:
        if xk == -1:
            raise PoleAtMinusOne("x_k = -1 makes 1 + x_k vanish")
    lead = [_power_table(_div(-xk, 1 + xk), n) for xk in x]
    trail = [_power_table(_div(1, 1 + xk), n) for xk in x]
    total = 0
    for r in enumerate_support(n, m):
        term = 1
        for k in range(m):
            nxt = r[(k + 1) % m]
            # the (1+x_k)^{-r_{k+1}} half of the denominator belongs to link k
            term = term * binomial(n - r[k], nxt) * lead[k][r[k]] * trail[k][nxt]
        total = total + term
    return total
