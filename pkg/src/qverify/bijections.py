"""Coloured independent sets on a path and on a cycle, and the maps between them.

On the path the ground set is ``[n-1] = {1..n-1}`` (triples) and ``[n]``
(coloured subsets); on the cycle it is ``Z_n = {0..n-1}``.  Colourings are
stored as tuples aligned with the sorted underlying set.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product

from .errors import NotInS, NotInT
from .qkernel import binomial
from .records import make_record, timed

LINE, CYCLE = "line", "cycle"


@dataclass(frozen=True, order=True)
class ColoredTriple:
    """``(A; f, g)``: A independent, f: A -> [m], g: A -> [m+1]."""

    A: tuple
    f: tuple
    g: tuple

    def __post_init__(self):
        if not (len(self.A) == len(self.f) == len(self.g)):
            raise ValueError("f and g must be defined exactly on A")
        if list(self.A) != sorted(set(self.A)):
            raise ValueError("A must be strictly increasing")


@dataclass(frozen=True, order=True)
class ColoredSubset:
    """``(X; h)`` with h: X -> [m]."""

    X: tuple
    h: tuple

    def __post_init__(self):
        if len(self.X) != len(self.h):
            raise ValueError("h must be defined exactly on X")
        if list(self.X) != sorted(set(self.X)):
            raise ValueError("X must be strictly increasing")


@dataclass(frozen=True)
class ChainDecomposition:
    chains: tuple  # tuple of tuples, ordered by first element

    def __iter__(self):
        return iter(self.chains)

    def __len__(self):
        return len(self.chains)


def ground_set(n: int, topology: str) -> range:
    return range(1, n) if topology == LINE else range(n)


def is_independent(A, n: int, topology: str) -> bool:
    s = set(A)
    if not s <= set(ground_set(n, topology)):
        return False
    if topology == LINE:
        return all(a + 1 not in s for a in s)
    return all((a + 1) % n not in s for a in s)


def enumerate_independent(n: int, topology: str) -> list[tuple]:
    """All independent subsets, ordered by size and then lexicographically."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if topology not in (LINE, CYCLE):
        raise ValueError(f"unknown topology {topology!r}")
    points = list(ground_set(n, topology))
    out = []

    def walk(i: int, chosen: list):
        if i >= len(points):
            out.append(tuple(chosen))
            return
        walk(i + 1, chosen)
        p = points[i]
        if topology == CYCLE and chosen and chosen[0] == 0 and p == n - 1:
            return  # n-1 would touch 0 across the wrap
        if topology == CYCLE and n == 1:
            return  # the single point of Z_1 is its own neighbour
        chosen.append(p)
        walk(i + 2, chosen)
        chosen.pop()

    walk(0, [])
    return sorted(out, key=lambda a: (len(a), a))


def independent_count_formula(n: int, k: int, topology: str):
    """Number of k-subsets: C(n-k, k) on the path [n-1], n/(n-k) C(n-k, k) on Z_n."""
    if topology == LINE:
        return binomial(n - k, k)
    if k == 0:
        return 1
    if n - k <= 0:
        return 0
    c = binomial(n - k, k) * n
    assert c % (n - k) == 0
    return c // (n - k)


def chain_decompose(X) -> ChainDecomposition:
    chains, run = [], []
    for x in sorted(set(X)):
        if run and x == run[-1] + 1:
            run.append(x)
        else:
            if run:
                chains.append(tuple(run))
            run = [x]
    if run:
        chains.append(tuple(run))
    return ChainDecomposition(tuple(chains))


def cyclic_arcs(X, n: int) -> list[tuple]:
    """Maximal runs of X in cyclic order for a proper subset X of Z_n, each starting after a gap."""
    s = set(X)
    if len(s) >= n:
        raise ValueError("the full cycle has no arc decomposition")
    start = next(p for p in range(n) if p not in s)
    arcs, run = [], []
    for step in range(1, n + 1):
        p = (start + step) % n
        if p in s:
            run.append(p)
        elif run:
            arcs.append(tuple(run))
            run = []
    if run:
        arcs.append(tuple(run))
    return arcs


def in_T(X, n: int) -> bool:
    """The maximal chain containing n, if there is one, has even length."""
    if n not in X:
        return True
    chain = next(c for c in chain_decompose(X) if n in c)
    return len(chain) % 2 == 0


def _check_colors(values, hi: int) -> bool:
    return all(1 <= v <= hi for v in values)


def in_S(t: ColoredTriple, n: int, m: int, topology: str = LINE) -> bool:
    return (
        is_independent(t.A, n, topology)
        and _check_colors(t.f, m)
        and _check_colors(t.g, m + 1)
    )


def _forward(t: ColoredTriple, n: int, m: int, wrap: bool) -> ColoredSubset:
    h = dict(zip(t.A, t.f))
    for i, gi in zip(t.A, t.g):
        if gi <= m:
            h[(i + 1) % n if wrap else i + 1] = gi
    X = tuple(sorted(h))
    return ColoredSubset(X, tuple(h[x] for x in X))


def theta_forward(t: ColoredTriple, n: int, m: int) -> ColoredSubset:
    if not in_S(t, n, m, LINE):
        raise NotInS(f"{t} is not in S for n={n}, m={m}")
    c = _forward(t, n, m, wrap=False)
    if not in_T(c.X, n):
        raise NotInT(f"theta produced {c}, whose chain at {n} is odd")
    return c


def _split_run(run: tuple, h: dict, m: int, following: dict) -> None:
    """Odd positions of a run go to A; each takes its successor's colour as g, else m+1."""
    for pos in range(0, len(run), 2):
        a = run[pos]
        nxt = run[pos + 1] if pos + 1 < len(run) else None
        following[a] = (h[a], h[nxt] if nxt is not None else m + 1)


def _triple_from(following: dict) -> ColoredTriple:
    A = tuple(sorted(following))
    return ColoredTriple(A, tuple(following[a][0] for a in A), tuple(following[a][1] for a in A))


def theta_inverse(c: ColoredSubset, n: int, m: int) -> ColoredTriple:
    if not set(c.X) <= set(range(1, n + 1)) or not _check_colors(c.h, m):
        raise NotInS(f"{c} is not a coloured subset of [{n}] with colours in [{m}]")
    h = dict(zip(c.X, c.h))
    following: dict = {}
    for chain in chain_decompose(c.X):
        _split_run(chain, h, m, following)
    t = _triple_from(following)
    if not in_S(t, n, m, LINE):
        raise NotInS(f"{c} is outside T, its preimage {t} is not in S")
    return t


def phi_forward(t: ColoredTriple, n: int, m: int) -> ColoredSubset:
    if not in_S(t, n, m, CYCLE):
        raise ValueError(f"{t} is not in U for n={n}, m={m}")
    return _forward(t, n, m, wrap=True)


def phi_preimages(c: ColoredSubset, n: int, m: int) -> list[ColoredTriple]:
    """Constructive fibre of phi: one triple, or for X = Z_n none (n odd) / two (n even)."""
    if not set(c.X) <= set(range(n)) or not _check_colors(c.h, m):
        raise ValueError(f"{c} is not a coloured subset of Z_{n}")
    h = dict(zip(c.X, c.h))
    if len(c.X) == n:
        if n % 2:
            return []
        out = []
        for parity in (0, 1):
            A = tuple(range(parity, n, 2))
            out.append(ColoredTriple(A, tuple(h[a] for a in A), tuple(h[(a + 1) % n] for a in A)))
        return out
    following: dict = {}
    for arc in cyclic_arcs(c.X, n):
        _split_run(arc, h, m, following)
    return [_triple_from(following)]


# -- enumeration of the four sets -------------------------------------------


def _colorings(k: int, hi: int):
    return product(range(1, hi + 1), repeat=k)


def enumerate_triples(n: int, m: int, topology: str) -> list[ColoredTriple]:
    """S (path) or U (cycle), colourings in lexicographic order for each A."""
    out = []
    for A in enumerate_independent(n, topology):
        for f in _colorings(len(A), m):
            for g in _colorings(len(A), m + 1):
                out.append(ColoredTriple(A, f, g))
    return out


def _all_subsets(points) -> list[tuple]:
    points = list(points)
    subs = [tuple(p for i, p in enumerate(points) if mask >> i & 1) for mask in range(1 << len(points))]
    return sorted(subs, key=lambda a: (len(a), a))


def enumerate_T(n: int, m: int) -> list[ColoredSubset]:
    return [
        ColoredSubset(X, h)
        for X in _all_subsets(range(1, n + 1))
        if in_T(X, n)
        for h in _colorings(len(X), m)
    ]


def enumerate_V(n: int, m: int) -> list[ColoredSubset]:
    return [ColoredSubset(X, h) for X in _all_subsets(range(n)) for h in _colorings(len(X), m)]


# -- closed forms -------------------------------------------------------------


def line_sum(n: int, m: int) -> int:
    return sum(binomial(n - k, k) * (m * (m + 1)) ** k for k in range(n // 2 + 1))


def cycle_sum(n: int, m: int) -> int:
    return sum(independent_count_formula(n, k, CYCLE) * (m * (m + 1)) ** k for k in range(n // 2 + 1))


def alternating_sum(n: int, m: int) -> int:
    """sum_{i=0}^{n} (-m)^i (m+1)^(n-i)."""
    return sum((-m) ** i * (m + 1) ** (n - i) for i in range(n + 1))


def even_chain_census(n: int, m: int) -> int:
    """|T| counted by the even length 2k of the chain ending at n."""
    total = 0
    for k in range(n // 2 + 1):
        if 2 * k < n:
            total += m ** (2 * k) * (m + 1) ** (n - 2 * k - 1)
        else:
            total += m**n
    return total


@timed
def check_cardinalities(n: int, m: int, which: str = "theta"):
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    if which == "theta":
        return _check_theta(n, m)
    if which == "phi":
        return _check_phi(n, m)
    raise ValueError(f"unknown check {which!r}")


def _check_theta(n: int, m: int):
    S = enumerate_triples(n, m, LINE)
    T = enumerate_T(n, m)
    image = [theta_forward(t, n, m) for t in S]
    bijective = len(set(image)) == len(S) and set(image) == set(T)
    round_trip = all(theta_inverse(c, n, m) == t for t, c in zip(S, image)) and all(
        theta_forward(theta_inverse(c, n, m), n, m) == c for c in T
    )
    lhs = [len(S), line_sum(n, m)]
    rhs = [len(T), alternating_sum(n, m), even_chain_census(n, m)]
    counts_ok = len(S) == line_sum(n, m) == len(T) == alternating_sum(n, m) == even_chain_census(n, m)
    passed = bijective and round_trip and counts_ok
    note = "" if passed else f"bijective={bijective} round_trip={round_trip} counts={counts_ok}"
    return make_record("theta", {"n": n, "m": m}, lhs, rhs, passed=passed, note=note)


def _check_phi(n: int, m: int):
    U = enumerate_triples(n, m, CYCLE)
    V = enumerate_V(n, m)
    fibres: dict = {}
    for t in U:
        fibres.setdefault(phi_forward(t, n, m), []).append(t)
    census_ok = True
    sizes = Counter()
    for c in V:
        pre = phi_preimages(c, n, m)
        actual = fibres.get(c, [])
        expected = (0 if n % 2 else 2) if len(c.X) == n else 1
        sizes[len(pre)] += 1
        if sorted(pre) != sorted(actual) or len(pre) != expected:
            census_ok = False
    closed = (m + 1) ** n + (-m) ** n
    lhs = [len(U), cycle_sum(n, m)]
    rhs = [closed, sum(len(v) for v in fibres.values())]
    counts_ok = len(U) == cycle_sum(n, m) == closed and set(fibres) <= set(V)
    passed = census_ok and counts_ok
    note = f"fibre sizes {dict(sorted(sizes.items()))}"
    return make_record("phi", {"n": n, "m": m}, lhs, rhs, passed=passed, note=note)
