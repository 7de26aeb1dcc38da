import pickle
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qverify.errors import (
    BoundExceeded,
    DiscriminantMismatch,
    DivisionByZero,
    NonSquare,
    ZeroAtNegativeExponent,
)
from qverify.exact import (
    ONE,
    ZERO,
    LaurentPoly,
    QuadExt,
    TruncSeries,
    laurent_eval,
    laurent_mul,
    quadext_arith,
    series_det,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
laurents = st.dictionaries(st.integers(-4, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)
quads5 = st.builds(lambda a, b: QuadExt(5, a, b), rationals, rationals)


# -- LaurentPoly ------------------------------------------------------------


def test_mul_examples():
    assert laurent_mul(LaurentPoly({0: 1, 1: 1}), LaurentPoly({0: 1, 1: -1})) == LaurentPoly({0: 1, 2: -1})
    assert laurent_mul(LaurentPoly({0: 1, 1: 1}), ZERO).is_zero()
    got = LaurentPoly({0: 1, 1: 1}) * LaurentPoly({0: 1, 1: 1, 2: 1})
    assert got == LaurentPoly({0: 1, 1: 2, 2: 2, 3: 1})


def test_zero_coefficients_are_not_stored():
    p = LaurentPoly({0: 1, 3: 0, -2: Fraction(0)})
    assert p.terms() == [(0, 1)]
    assert (p - p).terms() == []


def test_eval_examples():
    assert laurent_eval(LaurentPoly({0: 1, 1: 1, 2: 1}), 1) == 3
    assert laurent_eval(LaurentPoly({-1: 1}), Fraction(1, 2)) == 2
    with pytest.raises(ZeroAtNegativeExponent):
        laurent_eval(LaurentPoly({-1: 1}), 0)
    assert laurent_eval(LaurentPoly({0: 5, 2: 1}), 0) == 5


def test_degree_valuation_and_substitutions():
    p = LaurentPoly({-2: 3, 5: 1})
    assert (p.degree(), p.valuation()) == (5, -2)
    assert p.invert_variable() == LaurentPoly({2: 3, -5: 1})
    assert p.shift(2) == LaurentPoly({0: 3, 7: 1})
    assert p.dilate(2) == LaurentPoly({-4: 3, 10: 1})
    assert LaurentPoly({0: 1, 1: 1, 4: 1}).truncate(2) == LaurentPoly({0: 1, 1: 1})


def test_divmod():
    num = LaurentPoly({0: 1, 3: 1})
    quot, rem = divmod(num, LaurentPoly({0: 1, 1: 1}))
    assert quot == LaurentPoly({0: 1, 1: -1, 2: 1}) and rem.is_zero()
    quot, rem = divmod(LaurentPoly({2: 1}), LaurentPoly({0: 1, 1: 2}))
    assert quot * LaurentPoly({0: 1, 1: 2}) + rem == LaurentPoly({2: 1})


def test_negative_powers_only_for_monomials():
    assert LaurentPoly({2: 3}) ** -1 == LaurentPoly({-2: Fraction(1, 3)})
    with pytest.raises((ValueError, ZeroDivisionError, ArithmeticError)):
        LaurentPoly({0: 1, 1: 1}) ** -1


def test_pickle_round_trip():
    p = LaurentPoly({-1: Fraction(2, 3), 4: 7})
    assert pickle.loads(pickle.dumps(p)) == p
    x = QuadExt(-3, 1, Fraction(1, 2))
    assert pickle.loads(pickle.dumps(x)) == x
    s = TruncSeries(2, 3, {(1, 0): 2, (1, 1): -1})
    assert pickle.loads(pickle.dumps(s)) == s


@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a * ONE == a and a + ZERO == a


@given(laurents, laurents, rationals.filter(lambda v: v != 0))
def test_eval_is_a_ring_homomorphism(p, r, v):
    assert laurent_eval(p * r, v) == laurent_eval(p, v) * laurent_eval(r, v)
    assert laurent_eval(p + r, v) == laurent_eval(p, v) + laurent_eval(r, v)


@given(laurents)
def test_invert_variable_is_an_involution(p):
    assert p.invert_variable().invert_variable() == p


# -- QuadExt ------------------------------------------------------------------


def test_omega_squared_is_its_conjugate():
    w = QuadExt.omega()
    assert w == QuadExt(-3, Fraction(-1, 2), Fraction(1, 2))
    assert quadext_arith(w, w, "mul") == QuadExt(-3, Fraction(-1, 2), Fraction(-1, 2)) == w.conj()
    assert w**3 == 1 and 1 + w + w * w == 0


def test_quadext_add_and_div_examples():
    x, y = QuadExt(5, 1, 2), QuadExt(5, Fraction(1, 3), -5)
    assert quadext_arith(x, y, "add") == QuadExt(5, Fraction(4, 3), -3)
    t = QuadExt(5, -3, 1)  # sqrt5 - 3
    assert quadext_arith(QuadExt(5, 1), 2 - t, "div") == QuadExt(5, Fraction(1, 4), Fraction(1, 20))


def test_quadext_errors():
    with pytest.raises(DiscriminantMismatch):
        QuadExt(5, 1, 1) + QuadExt(-3, 1, 1)
    with pytest.raises(DivisionByZero):
        quadext_arith(QuadExt(5, 1, 1), QuadExt(5), "div")
    with pytest.raises(ValueError):
        QuadExt(4, 1, 1)  # a perfect square gives no extension


def test_quadext_mixes_with_rationals():
    x = QuadExt(5, 3, 0)
    assert x == 3 and x == Fraction(3) and hash(x) == hash(3)
    assert QuadExt.sqrt(5) ** 2 == 5
    assert (QuadExt.sqrt(5) - 1) * (QuadExt.sqrt(5) + 1) == 4


@given(quads5, quads5)
def test_norm_is_multiplicative(x, y):
    xy = x * y
    assert xy * xy.conj() == (x * x.conj()) * (y * y.conj())
    assert xy.norm() == x.norm() * y.norm()


@given(quads5, quads5.filter(lambda v: v != 0))
def test_division_inverts_multiplication(x, y):
    assert (x / y) * y == x


# -- TruncSeries -----------------------------------------------------------


def _series(m, D):
    vec = st.tuples(*[st.integers(0, D) for _ in range(m)])
    return st.dictionaries(vec, st.integers(-4, 4), max_size=6).map(lambda t: TruncSeries(m, D, t))


def test_truncation_bound_is_enforced():
    s = TruncSeries(2, 2, {(1, 1): 1, (2, 1): 5})
    assert s.terms() == [((1, 1), 1)]
    with pytest.raises(BoundExceeded):
        s.coeff((3, 0))


def test_inverse_of_one_plus_x():
    x = TruncSeries.variable(1, 5, 0)
    inv = (x + 1).inverse()
    assert [inv.coeff((k,)) for k in range(6)] == [1, -1, 1, -1, 1, -1]
    with pytest.raises(ZeroDivisionError):
        x.inverse()


@given(_series(2, 5), _series(2, 5), st.integers(0, 4))
def test_truncation_is_a_ring_congruence(a, b, low):
    assert (a * b).truncate(low) == a.truncate(low) * b.truncate(low)
    assert (a + b).truncate(low) == a.truncate(low) + b.truncate(low)


@given(_series(2, 4))
def test_inverse_times_series_is_one(a):
    a = a - a.constant_term() + 3
    assert a * a.inverse() == TruncSeries.constant(2, 4, 1)


def test_compose_and_derivative():
    x = TruncSeries.variable(1, 4, 0)
    f = (x + 1) ** 2
    assert f.derivative(0) == (x + 1) * 2
    assert f.compose([x * x]) == TruncSeries(1, 4, {(0,): 1, (2,): 2, (4,): 1})
    assert x.mul_var(0) == x * x


# -- determinants ----------------------------------------------------------


def test_det_one_by_one():
    x = TruncSeries.variable(1, 4, 0)
    s = (1 - x) * (1 + x).inverse()
    assert series_det([[s]], 4) == s


def test_det_identity_and_non_square():
    one, zero = TruncSeries.constant(3, 4, 1), TruncSeries(3, 4)
    eye = [[one if i == j else zero for j in range(3)] for i in range(3)]
    assert series_det(eye, 4) == one
    with pytest.raises(NonSquare):
        series_det([[one, zero]], 4)


def test_det_two_by_two_matches_closed_form():
    D = 4
    x1, x2 = TruncSeries.variable(2, D, 0), TruncSeries.variable(2, D, 1)
    a = (1 + x1).inverse()
    b = (1 + x2).inverse()
    mat = [[1 - x1 * a, -x2 * b], [-x1 * a, 1 - x2 * b]]
    expected = (1 - x1 * x2) * a * b
    assert series_det(mat, D) == expected


@settings(max_examples=30)
@given(st.integers(1, 6), st.data())
def test_triangular_det_is_diagonal_product(n, data):
    D = 3
    entries = data.draw(st.lists(_series(2, D), min_size=n * n, max_size=n * n))
    mat = [[entries[i * n + j] if j >= i else TruncSeries(2, D) for j in range(n)] for i in range(n)]
    expected = TruncSeries.constant(2, D, 1)
    for i in range(n):
        expected = expected * mat[i][i]
    assert series_det(mat, D) == expected
