"""Lucas' two formulas in their several guises.

* bivariate form, proved by exhaustive evaluation on a full grid;
* univariate rational form in x, compared after clearing (1+x)^n;
* integer-m form, a polynomial identity in m with an exact division by 2m+1;
* the values at a primitive cube root of unity, in Q(sqrt -3);
* the sqrt-5 evaluation of the cyclic sum, in Q(sqrt 5).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GridTooSmall, NonExactDivision
from .exact import ONE, LaurentPoly, QuadExt
from .qkernel import binomial
from .records import make_record, timed
from .sums import enumerate_support, eval_cyclic_binomial_sum

X = LaurentPoly({1: 1})  # the formal variable (x, or m), reusing the one-variable type


def lucas_coefficient(n: int, k: int, variant: int) -> Fraction:
    """C(n-k, k), times n/(n-k) for the second formula."""
    c = binomial(n - k, k)
    if variant == 2:
        return Fraction(n * c, n - k)
    return Fraction(c)


@dataclass(frozen=True)
class BivariateGrid:
    x_points: tuple = field(default_factory=tuple)
    y_points: tuple = field(default_factory=tuple)

    @classmethod
    def default(cls, n: int) -> "BivariateGrid":
        """n+1 positive x-points against n+1 negative y-points, so x != y throughout."""
        xs = tuple(Fraction(i + 1) for i in range(n + 1))
        ys = tuple(Fraction(-(i + 1), 2) for i in range(n + 1))
        return cls(xs, ys)

    def check(self, deg: int) -> None:
        if len(set(self.x_points)) < deg + 1 or len(set(self.y_points)) < deg + 1:
            raise GridTooSmall(f"need {deg + 1} distinct points per axis")


def lucas_lhs_value(n: int, x, y, variant: int):
    s, p = x + y, -x * y
    return sum(lucas_coefficient(n, k, variant) * s ** (n - 2 * k) * p**k for k in range(n // 2 + 1))


def lucas_rhs_value(n: int, x, y, variant: int):
    if variant == 2:
        return x**n + y**n
    if x == y:
        return (n + 1) * x**n
    return (x ** (n + 1) - y ** (n + 1)) / (x - y)


@timed
def verify_lucas(n: int, variant: int = 1, grid: BivariateGrid | None = None):
    """Both sides have degree <= n in each variable, so agreement on an
    (n+1) x (n+1) grid is a proof; the diagonal x = y is checked as well."""
    if n < 1:
        raise ValueError("n must be >= 1")
    grid = BivariateGrid.default(n) if grid is None else grid
    grid.check(n)
    lhs, rhs = [], []
    for x in grid.x_points:
        for y in grid.y_points:
            if variant == 1 and x == y:
                continue
            lhs.append(lucas_lhs_value(n, x, y, variant))
            rhs.append(lucas_rhs_value(n, x, y, variant))
    # the diagonal, a univariate identity of degree n
    for x in grid.x_points:
        lhs.append(lucas_lhs_value(n, x, x, variant))
        rhs.append(lucas_rhs_value(n, x, x, variant))
    return make_record("lucas", {"n": n, "variant": variant}, lhs, rhs)


def rational_lucas_sides(n: int, variant: str) -> tuple[LaurentPoly, LaurentPoly]:
    """Both sides times (1+x)^n, as polynomials in x."""
    one_plus_x = ONE + X
    lhs = LaurentPoly()
    v = 1 if variant == "line" else 2
    for k in range(n // 2 + 1):
        lhs = lhs + (-X) ** k * one_plus_x ** (n - 2 * k) * lucas_coefficient(n, k, v)
    if variant == "line":
        rhs = LaurentPoly({i: 1 for i in range(n + 1)})
    else:
        rhs = ONE + X**n
    return lhs, rhs


@timed
def verify_rational_lucas(n: int, variant: str = "line"):
    if n < 1:
        raise ValueError("n must be >= 1")
    if variant not in ("line", "cycle"):
        raise ValueError(f"unknown variant {variant!r}")
    lhs, rhs = rational_lucas_sides(n, variant)
    return make_record("rational_lucas", {"n": n, "variant": variant}, lhs, rhs)


def binet_lhs(n: int, variant: int) -> LaurentPoly:
    """sum_k [n/(n-k)] C(n-k, k) m^k (m+1)^k as a polynomial in m."""
    base = X * (X + 1)
    out = LaurentPoly()
    for k in range(n // 2 + 1):
        out = out + base**k * lucas_coefficient(n, k, variant)
    return out


def binet_rhs(n: int, variant: int) -> LaurentPoly:
    if variant == 2:
        return (X + 1) ** n + (-X) ** n
    numer = (X + 1) ** (n + 1) - (-X) ** (n + 1)
    quot, rem = divmod(numer, 2 * X + 1)
    if not rem.is_zero():
        raise NonExactDivision(f"2m+1 does not divide the numerator, remainder {rem}")
    return quot


@timed
def verify_binet_integer_m(n: int, variant: int = 1):
    if n < 1:
        raise ValueError("n must be >= 1")
    return make_record("binet", {"n": n, "variant": variant}, binet_lhs(n, variant), binet_rhs(n, variant))


# -- cube roots of unity ----------------------------------------------------

OMEGA_TABLE_LINE = {0: 1, 1: 1, 2: 0, 3: -1, 4: -1, 5: 0}
OMEGA_TABLE_CYCLE = {0: 2, 1: 1, 2: -1, 3: -2, 4: -1, 5: 1}


def omega_line_value(n: int, w: QuadExt) -> QuadExt:
    return (1 - w ** (n + 1)) / ((1 - w) * (1 + w) ** n)


def omega_cycle_value(n: int, w: QuadExt) -> QuadExt:
    return (1 + w**n) / (1 + w) ** n


@timed
def verify_omega_cases(n: int):
    """Integer alternating sums against both choices of omega and the period-6 table."""
    if n < 1:
        raise ValueError("n must be >= 1")
    line = sum((-1) ** k * binomial(n - k, k) for k in range(n // 2 + 1))
    cycle = sum((-1) ** k * lucas_coefficient(n, k, 2) for k in range(n // 2 + 1))
    lhs = [line, cycle]
    rhs = []
    for sign in (1, -1):
        w = QuadExt.omega(sign)
        rhs.extend([omega_line_value(n, w), omega_cycle_value(n, w)])
    table = [OMEGA_TABLE_LINE[n % 6], OMEGA_TABLE_CYCLE[n % 6]]
    passed = all(v.is_rational() for v in rhs) and rhs == lhs + lhs and lhs == table
    return make_record("omega", {"n": n}, lhs, rhs, passed=passed)


def cyc_minus_one_rhs(m: int, n: int, w: QuadExt):
    if m % 3 == 0:
        return (-1) ** (m * n) * (n + 1)
    return (1 - w ** (m * (n + 1))) / ((1 - w**m) * (1 + w) ** (m * n))


@timed
def verify_cyc_minus_one(m: int, n: int):
    """The all-(-1) cyclic binomial sum against its Q(sqrt -3) closed form (both omegas)."""
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    lhs = eval_cyclic_binomial_sum(n, (-1,) * m)
    rhs = [cyc_minus_one_rhs(m, n, QuadExt.omega(s)) for s in (1, -1)]
    passed = all(r == lhs for r in rhs)
    return make_record("cyc_minus_one", {"m": m, "n": n}, lhs, rhs, passed=passed)


# -- sqrt 5 ---------------------------------------------------------------


def sqrt5_rhs(m: int, n: int) -> QuadExt:
    t = QuadExt(5, -3, 1)  # sqrt5 - 3
    s = QuadExt(5, -1, 1)  # sqrt5 - 1
    num = 2 ** (m * (n + 1)) - t ** (m * (n + 1))
    den = (2**m - t**m) * s ** (m * n)
    return num / den


@timed
def verify_sqrt5(m: int, n: int):
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    lhs = sum(
        _binomial_product(n, r) for r in enumerate_support(n, m)
    )
    rhs = sqrt5_rhs(m, n)
    passed = rhs.is_rational() and rhs == lhs
    return make_record("sqrt5", {"m": m, "n": n}, lhs, rhs, passed=passed)


def _binomial_product(n: int, r: tuple) -> int:
    m = len(r)
    out = 1
    for k in range(m):
        out *= binomial(n - r[k], r[(k + 1) % m])
    return out
