from fractions import Fraction
from itertools import product
from math import factorial, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from qverify.errors import BoundExceeded, PoleAtMinusOne
from qverify.exact import TruncSeries
from qverify.lagrange import (
    FunctionalSystem,
    compose_f,
    compute_delta,
    cyclic_x_rhs,
    dejavu_coefficient,
    dejavu_rhs,
    delta_closed_form,
    exponent_vectors,
    lagrange_coefficient,
    cyclic_phi,
    random_polynomial_system,
    solve_functional_system,
    verify_cyclic_x,
    verify_delta_closed_form,
    verify_dejavu,
    verify_lagrange,
    verify_lagrange_cyclic,
    verify_lagrange_random,
)
from qverify.sampling import cyclic_points
from qverify.sums import CyclicSumSpec, eval_cyclic_rational_sum


def var(m, D, i):
    return TruncSeries.variable(m, D, i)


def one(m, D):
    return TruncSeries.constant(m, D, 1)


def gbinom(a: int, b: int) -> int:
    """Binomial coefficient with an arbitrary integer upper index."""
    if b < 0:
        return 0
    return prod(a - i for i in range(b)) // factorial(b)


def catalan_system(D=4, f=None):
    x = var(1, D, 0)
    return FunctionalSystem(1, ((1 + x) ** 2,), one(1, D) if f is None else f, D)


# -- solving ---------------------------------------------------------------


def test_catalan():
    x = solve_functional_system(catalan_system())[0]
    assert [x.coeff((k,)) for k in range(5)] == [0, 1, 2, 5, 14] == oracles.series_coeffs_catalan(4)


def test_constant_phi_gives_identity():
    sys = FunctionalSystem(1, (one(1, 4),), one(1, 4), 4)
    assert solve_functional_system(sys) == [var(1, 4, 0)]


def test_two_variable_cycle_to_degree_two():
    D = 2
    sys = FunctionalSystem(2, tuple(cyclic_phi(2, D)), one(2, D), D)
    x1, x2 = solve_functional_system(sys)
    u1, u2 = var(2, D, 0), var(2, D, 1)
    assert x1 == u1 + u1 * u1 + u1 * u2
    assert x2 == u2 + u2 * u2 + u1 * u2


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 2), st.integers(1, 4), st.integers(0, 10**6))
def test_solution_satisfies_defining_equations(m, D, seed):
    sys = random_polynomial_system(m, D, seed)
    xs = solve_functional_system(sys)
    for i in range(m):
        assert xs[i] - var(m, D, i) * sys.phi[i].compose(xs) == TruncSeries(m, D)
        assert xs[i].constant_term() == 0


def test_system_validation():
    with pytest.raises(ValueError):
        FunctionalSystem(1, (var(1, 3, 0),), one(1, 3), 3)
    with pytest.raises(ValueError):
        FunctionalSystem(2, (one(2, 3),), one(2, 3), 3)
    with pytest.raises(BoundExceeded):
        FunctionalSystem(1, (one(1, 2),), one(1, 2), 3)


# -- the determinant --------------------------------------------------------


def test_delta_examples():
    x = var(1, 5, 0)
    assert compute_delta(catalan_system(5)) == (1 - x) * (1 + x).inverse()
    const = FunctionalSystem(2, (one(2, 4) * 3, one(2, 4) * 5), one(2, 4), 4)
    assert compute_delta(const) == one(2, 4)


def test_delta_closed_form_grid():
    for m in (1, 2, 3):
        for D in range(1, 6):
            assert verify_delta_closed_form(m, D).passed


def test_delta_closed_form_by_hand_m3():
    D = 4
    x1, x2, x3 = (var(3, D, i) for i in range(3))
    expected = (1 - x1 * x2 * x3) * (1 + x1).inverse() * (1 + x2).inverse() * (1 + x3).inverse()
    assert delta_closed_form(3, D) == expected


# -- coefficient extraction -------------------------------------------------


def test_lagrange_coefficient_examples():
    D = 4
    x = var(1, D, 0)
    assert lagrange_coefficient(catalan_system(D, f=one(1, D) * 7), (0,)) == 7
    assert lagrange_coefficient(catalan_system(D), (3,)) == 0
    assert lagrange_coefficient(catalan_system(D, f=x), (3,)) == 5
    with pytest.raises(BoundExceeded):
        lagrange_coefficient(catalan_system(D), (5,))


def test_lagrange_constant_f():
    rec = verify_lagrange(catalan_system(4))
    assert rec.passed
    assert rec.lhs == [1, 0, 0, 0, 0]


def test_lagrange_geometric_case():
    D = 5
    x = var(1, D, 0)
    sys = FunctionalSystem(1, (1 + x,), x, D)
    rec = verify_lagrange(sys)
    assert rec.passed and rec.lhs == [0, 1, 1, 1, 1, 1]


def test_lagrange_constant_phi_system():
    D = 4
    u = [var(2, D, i) for i in range(2)]
    f = (1 + u[0]) ** 3 * (1 - u[1] * 2).inverse()
    sys = FunctionalSystem(2, (one(2, D) * 2, one(2, D) * Fraction(1, 3)), f, D)
    assert verify_lagrange(sys).passed


def test_lagrange_cyclic_family():
    for m in (1, 2):
        for n in (0, 1, 2):
            for D in range(1, 5):
                assert verify_lagrange_cyclic(m, n, D).passed


def test_lagrange_random_systems():
    for m in (1, 2):
        for seed in (1, 2, 3):
            assert verify_lagrange_random(m, 4, seed).passed


def test_lagrange_catches_a_wrong_delta():
    # dropping the determinant breaks the formula, so the check has teeth
    sys = catalan_system(4, f=var(1, 4, 0))
    composed = compose_f(sys)
    phi = sys.phi[0]
    wrong = [(sys.f * phi**k).coeff((k,)) for k in range(5)]
    assert wrong != [composed.coeff((k,)) for k in range(5)]


def test_exponent_vectors():
    assert exponent_vectors(2, 2) == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]


# -- the two extraction displays, with generalised binomials -----------------


def _extract(m, n, r, shifted):
    B = sum(r) + 1
    s = one(m, B)
    for k in range(m):
        s = s * (var(m, B, k) + 1) ** (-(n + 1 - r[k] - r[(k + 1) % m]))
        if shifted:
            s = s * var(m, B, k) ** (n + 1)
    return s.coeff(r)


def _cyclic_sign_product(n, r, forward=True):
    m = len(r)
    if forward:
        return prod((-1) ** r[k] * gbinom(n - r[k], r[(k + 1) % m]) for k in range(m))
    return prod((-1) ** r[k] * gbinom(n - r[(k + 1) % m], r[k]) for k in range(m))


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", [0, 1, 2])
def test_inverse_power_extraction(m, n):
    for r in product(range(2 * n + 4), repeat=m):
        if sum(r) > 9:
            continue
        value = _extract(m, n, r, shifted=False)
        assert value == _cyclic_sign_product(n, r, False) == _cyclic_sign_product(n, r, True)


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", [0, 1, 2])
def test_shifted_extraction_needs_every_index_large(m, n):
    for r in product(range(2 * n + 4), repeat=m):
        if sum(r) > 9:
            continue
        expected = _cyclic_sign_product(n, r) if min(r) >= n + 1 else 0
        assert _extract(m, n, r, shifted=True) == expected


def test_closed_coefficients_agree_with_generalised_form():
    for m in (1, 2, 3):
        for n in range(4):
            for r in product(range(n + 3), repeat=m):
                if min(r) <= n:
                    assert dejavu_coefficient(n, r) == _cyclic_sign_product(n, r)
                else:
                    assert dejavu_coefficient(n, r) == 0


# -- the rational cyclic identity -------------------------------------------


def test_dejavu_examples():
    assert verify_dejavu(3, 2, [(0, 0, 0)]).lhs == [1]
    rec = verify_dejavu(2, 2, [(2, 3), (1, 1)])
    assert rec.passed and rec.lhs == [Fraction(43, 144), Fraction(3, 16)]
    assert oracles.cyclic_rational_sum(2, (2, 3)) == Fraction(43, 144)
    with pytest.raises(PoleAtMinusOne):
        verify_dejavu(2, 2, [(2, -1)])


def test_dejavu_seeded_grid_with_face():
    for m in range(1, 5):
        for n in range(1, 5):
            pts = cyclic_points(m, 10, 2024, f"t:{m}:{n}")
            assert prod(pts[-1]) == 1
            assert verify_dejavu(m, n, pts).passed


@settings(max_examples=30)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_dejavu_property(m, n, data):
    vals = st.fractions(-6, 6, max_denominator=7).filter(lambda v: v != -1)
    x = tuple(data.draw(vals) for _ in range(m))
    assert eval_cyclic_rational_sum(CyclicSumSpec(m, n), x) == dejavu_rhs(n, x)


def test_dejavu_equal_coordinates_is_cyclic_x():
    for m in range(1, 5):
        for n in range(1, 5):
            pts = [p[0] for p in cyclic_points(1, 8, 5, f"x:{m}:{n}")]
            assert verify_cyclic_x(m, n, pts).passed
            for x in pts:
                assert dejavu_rhs(n, (x,) * m) == cyclic_x_rhs(m, n, x)


def test_cyclic_x_m1_is_line_lucas():
    from qverify.lucas import rational_lucas_sides

    for n in range(1, 8):
        _, rhs = rational_lucas_sides(n, "line")
        for x in (Fraction(3), Fraction(-2, 5)):
            assert cyclic_x_rhs(1, n, x) * (1 + x) ** n == sum(x**i for i in range(n + 1))
            assert rhs.eval(x) == sum(x**i for i in range(n + 1))
