"""Multivariate Lagrange inversion, checked on truncated power series.

For ``x_i = u_i * phi_i(x)`` the coefficient of ``u^r`` in ``f(x(u))`` equals
``[x^r] f * phi_1^{r_1} ... phi_m^{r_m} * Delta`` with
``Delta = det(delta_ij - x_j/phi_i * d phi_i/d x_j)``.  Both sides are computed
independently here: the left by iterating the functional equation and
substituting, the right by coefficient extraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import BoundExceeded, PoleAtMinusOne
from .exact import TruncSeries, _div, series_det
from .qkernel import binomial
from .records import make_record, timed
from .sampling import Lcg
from .sums import CyclicSumSpec, eval_cyclic_rational_sum


@dataclass(frozen=True)
class FunctionalSystem:
    m: int
    phi: tuple
    f: TruncSeries
    bound: int

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(self.phi))
        if len(self.phi) != self.m:
            raise ValueError("need one phi per variable")
        for p in self.phi + (self.f,):
            if p.num_vars != self.m:
                raise ValueError("series must live in m variables")
            if p.bound < self.bound:
                raise BoundExceeded(f"series known only to degree {p.bound}")
        if any(p.constant_term() == 0 for p in self.phi):
            raise ValueError("every phi_i needs a nonzero constant term")


def exponent_vectors(m: int, bound: int) -> list[tuple]:
    """All r in N^m with |r| <= bound, by total degree then lexicographically."""
    vecs = [r for r in product(range(bound + 1), repeat=m) if sum(r) <= bound]
    return sorted(vecs, key=lambda r: (sum(r), r))


def solve_functional_system(sys: FunctionalSystem) -> list[TruncSeries]:
    """Fixed-point iteration x <- u * phi(x); each pass fixes one more degree."""
    m, D = sys.m, sys.bound
    u = [TruncSeries.variable(m, D, i) for i in range(m)]
    x = [TruncSeries(m, D) for _ in range(m)]
    phi = [p.truncate(D) for p in sys.phi]
    for _ in range(D + 1):
        nxt = [u[i] * phi[i].compose(x) for i in range(m)]
        if nxt == x:
            break
        x = nxt
    else:
        raise ArithmeticError("fixed-point iteration failed to settle within D + 1 passes")
    return x


def compute_delta(sys: FunctionalSystem) -> TruncSeries:
    m, D = sys.m, sys.bound
    phi = [p.truncate(D) for p in sys.phi]
    rows = []
    for i in range(m):
        inv = phi[i].inverse()
        row = []
        for j in range(m):
            entry = -(phi[i].derivative(j).mul_var(j) * inv)
            if i == j:
                entry = entry + 1
            row.append(entry)
        rows.append(row)
    return series_det(rows, D)


class _Extractor:
    """Caches f * Delta and the powers of each phi_i for repeated extraction."""

    def __init__(self, sys: FunctionalSystem):
        self.sys = sys
        D = sys.bound
        self.base = sys.f.truncate(D) * compute_delta(sys)
        self.powers = []
        for p in sys.phi:
            p = p.truncate(D)
            pw = [TruncSeries.constant(sys.m, D, 1)]
            for _ in range(D):
                pw.append(pw[-1] * p)
            self.powers.append(pw)

    def coefficient(self, r):
        r = tuple(r)
        if len(r) != self.sys.m:
            raise ValueError("exponent vector has the wrong length")
        if sum(r) > self.sys.bound:
            raise BoundExceeded(f"|r| = {sum(r)} exceeds D = {self.sys.bound}")
        s = self.base
        for i, ri in enumerate(r):
            if ri:
                s = s * self.powers[i][ri]
        return s.coeff(r)


def lagrange_coefficient(sys: FunctionalSystem, r):
    """[x^r] { f * prod phi_i^{r_i} * Delta }."""
    return _Extractor(sys).coefficient(r)


def compose_f(sys: FunctionalSystem) -> TruncSeries:
    return sys.f.truncate(sys.bound).compose(solve_functional_system(sys))


@timed
def verify_lagrange(sys: FunctionalSystem, label: str = "custom", expected=None, **params):
    """Compare [u^r] f(x(u)) with the inversion formula for every |r| <= D.

    ``expected``, when given, is a third independent oracle r -> coefficient.
    """
    composed = compose_f(sys)
    ext = _Extractor(sys)
    vecs = exponent_vectors(sys.m, sys.bound)
    lhs = [composed.coeff(r) for r in vecs]
    rhs = [ext.coefficient(r) for r in vecs]
    passed = lhs == rhs
    note = ""
    if expected is not None:
        oracle = [expected(r) for r in vecs]
        if oracle != lhs:
            passed, note = False, "closed-form coefficients disagree"
    p = {"system": label, "m": sys.m, "D": sys.bound}
    p.update(params)
    return make_record("lagrange", p, lhs, rhs, passed=passed, note=note)


# -- the cyclic phi family and its companions --------------------------------


def _one_plus(m: int, D: int, i: int) -> TruncSeries:
    return TruncSeries.variable(m, D, i) + 1


def cyclic_phi(m: int, D: int) -> list[TruncSeries]:
    """phi_i = (1 + x_{i-1})(1 + x_i), indices cyclic (so phi = (1+x)^2 when m = 1)."""
    return [_one_plus(m, D, (i - 1) % m) * _one_plus(m, D, i) for i in range(m)]


def _all_product(m: int, D: int) -> TruncSeries:
    return TruncSeries.monomial(m, D, (1,) * m)


def delta_closed_form(m: int, D: int) -> TruncSeries:
    """(1 - x_1...x_m) / prod (1 + x_k)."""
    out = 1 - _all_product(m, D)
    for k in range(m):
        out = out * _one_plus(m, D, k).inverse()
    return out


def dejavu_f(m: int, n: int, D: int) -> TruncSeries:
    """(1 - P^{n+1})/(1 - P) * prod (1+x_k)^{-n} with P = x_1...x_m, as a series."""
    P = _all_product(m, D)
    geo = TruncSeries.constant(m, D, 1)
    term = geo
    for _ in range(n):
        term = term * P
        geo = geo + term
    out = geo
    for k in range(m):
        out = out * _one_plus(m, D, k) ** (-n)
    return out


def dejavu_coefficient(n: int, r) -> int:
    """prod_k (-1)^{r_k} C(n - r_k, r_{k+1}) when every r_k <= n, else 0."""
    if max(r) > n:
        return 0
    m = len(r)
    out = 1
    for k in range(m):
        out *= (-1) ** r[k] * binomial(n - r[k], r[(k + 1) % m])
    return out


def cyclic_system(m: int, n: int, D: int) -> FunctionalSystem:
    return FunctionalSystem(m, tuple(cyclic_phi(m, D)), dejavu_f(m, n, D), D)


def random_polynomial_system(m: int, D: int, seed: int) -> FunctionalSystem:
    """phi_i of total degree <= 2 and f of degree <= 2, rational coefficients from the LCG."""
    rng = Lcg(seed, f"lagrange-random-{m}-{D}")
    vecs = exponent_vectors(m, 2)

    def poly(nonzero_constant: bool) -> TruncSeries:
        terms = {}
        for r in vecs:
            c = rng.rational(lo=1, hi=9)
            if r == (0,) * m and nonzero_constant and c == 0:
                c = 1
            terms[r] = c
        return TruncSeries(m, D, terms)

    phi = tuple(poly(True) for _ in range(m))
    return FunctionalSystem(m, phi, poly(False), D)


@timed
def verify_delta_closed_form(m: int, D: int):
    sys = FunctionalSystem(m, tuple(cyclic_phi(m, D)), TruncSeries.constant(m, D, 1), D)
    lhs = compute_delta(sys)
    rhs = delta_closed_form(m, D)
    return make_record("delta", {"m": m, "D": D}, lhs, rhs)


def verify_lagrange_cyclic(m: int, n: int, D: int):
    return verify_lagrange(
        cyclic_system(m, n, D), label="cyclic", expected=lambda r: dejavu_coefficient(n, r), n=n
    )


def verify_lagrange_random(m: int, D: int, seed: int):
    return verify_lagrange(random_polynomial_system(m, D, seed), label="random", seed=seed)


# -- evaluation of the cyclic rational identity --------------------------------


def dejavu_rhs(n: int, x):
    P = 1
    for v in x:
        P = P * v
    geo = n + 1 if P == 1 else _div(1 - P ** (n + 1), 1 - P)
    out = geo
    for v in x:
        out = _div(out, (1 + v) ** n)
    return out


@timed
def verify_dejavu(m: int, n: int, sample_points):
    """Pointwise check; points on the face x_1...x_m = 1 use the finite geometric sum."""
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    spec = CyclicSumSpec(m, n)
    lhs, rhs = [], []
    for x in sample_points:
        if any(v == -1 for v in x):
            raise PoleAtMinusOne(f"sample point {x} has a coordinate -1")
        lhs.append(eval_cyclic_rational_sum(spec, x))
        rhs.append(dejavu_rhs(n, x))
    return make_record("dejavu", {"m": m, "n": n, "points": len(lhs)}, lhs, rhs)


def cyclic_x_rhs(m: int, n: int, x):
    xm = x**m
    geo = n + 1 if xm == 1 else _div(1 - xm ** (n + 1), 1 - xm)
    return _div(geo, (1 + x) ** (m * n))


@timed
def verify_cyclic_x(m: int, n: int, points):
    """The equal-weights specialisation x_k = x, against its own closed form."""
    spec = CyclicSumSpec(m, n)
    lhs = [eval_cyclic_rational_sum(spec, (x,) * m) for x in points]
    rhs = [cyclic_x_rhs(m, n, x) for x in points]
    return make_record("cyclic_x", {"m": m, "n": n, "points": len(lhs)}, lhs, rhs)
