import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from qverify.bijections import (
    CYCLE,
    LINE,
    ColoredSubset,
    ColoredTriple,
    alternating_sum,
    chain_decompose,
    check_cardinalities,
    enumerate_independent,
    enumerate_T,
    enumerate_triples,
    enumerate_V,
    in_T,
    independent_count_formula,
    line_sum,
    phi_forward,
    phi_preimages,
    theta_forward,
    theta_inverse,
)
from qverify.errors import NotInS

T = ColoredTriple
C = ColoredSubset


def test_independent_examples():
    assert enumerate_independent(3, LINE) == [(), (1,), (2,)]
    cyc4 = enumerate_independent(4, CYCLE)
    assert [a for a in cyc4 if len(a) == 2] == [(0, 2), (1, 3)]
    assert enumerate_independent(2, CYCLE) == [(), (0,), (1,)]


def test_independent_matches_filter_and_formulas():
    for n in range(1, 11):
        for topo, cyc in ((LINE, False), (CYCLE, True)):
            got = enumerate_independent(n, topo)
            assert set(got) == set(oracles.independent_sets(n, cyc))
            for k in range(n // 2 + 1):
                assert sum(1 for a in got if len(a) == k) == independent_count_formula(n, k, topo)


def test_chain_examples():
    assert chain_decompose({1, 2, 4}).chains == ((1, 2), (4,))
    assert chain_decompose(set()).chains == ()
    assert chain_decompose({1, 2, 3}).chains == ((1, 2, 3),)


@given(st.sets(st.integers(1, 20)))
def test_chain_decomposition_is_maximal_partition(X):
    chains = chain_decompose(X).chains
    assert sorted(x for c in chains for x in c) == sorted(X)
    for c in chains:
        assert list(c) == list(range(c[0], c[-1] + 1))
    for a, b in zip(chains, chains[1:]):
        assert b[0] > a[-1] + 1


def test_theta_examples():
    assert theta_forward(T((), (), ()), 3, 2) == C((), ())
    assert theta_forward(T((1,), (1,), (2,)), 2, 1) == C((1,), (1,))
    assert theta_forward(T((1,), (1,), (1,)), 2, 1) == C((1, 2), (1, 1))
    assert theta_inverse(C((1, 2), (1, 1)), 2, 1) == T((1,), (1,), (1,))
    assert theta_inverse(C((), ()), 2, 1) == T((), (), ())
    assert theta_inverse(C((1,), (1,)), 2, 1) == T((1,), (1,), (2,))


def test_theta_inverse_rejects_outside_T():
    assert not in_T((2,), 2)
    with pytest.raises(NotInS):
        theta_inverse(C((2,), (1,)), 2, 1)


def test_phi_examples():
    assert phi_forward(T((), (), ()), 4, 1) == C((), ())
    assert phi_forward(T((1,), (1,), (1,)), 2, 1) == C((0, 1), (1, 1))
    assert phi_forward(T((0,), (1,), (2,)), 3, 1) == C((0,), (1,))


def test_phi_fibres_examples():
    assert len(phi_preimages(C((0, 2), (1, 2)), 4, 2)) == 1
    assert phi_preimages(C((0, 1, 2), (1, 1, 1)), 3, 1) == []
    assert len(phi_preimages(C((0, 1), (1, 1)), 2, 1)) == 2


def test_round_trips_exhaustive():
    for n in range(2, 7):
        for m in range(1, 4):
            S = enumerate_triples(n, m, LINE)
            for t in S:
                assert theta_inverse(theta_forward(t, n, m), n, m) == t
            for c in enumerate_T(n, m):
                assert theta_forward(theta_inverse(c, n, m), n, m) == c


def test_phi_fibre_law_exhaustive():
    for n in range(2, 7):
        for m in range(1, 4):
            U = enumerate_triples(n, m, CYCLE)
            total = 0
            for c in enumerate_V(n, m):
                pre = phi_preimages(c, n, m)
                expected = (2 if n % 2 == 0 else 0) if len(c.X) == n else 1
                assert len(pre) == expected
                assert all(phi_forward(t, n, m) == c for t in pre)
                total += len(pre)
            assert total == len(U) == (m + 1) ** n + (-m) ** n


def test_cardinality_examples():
    rec = check_cardinalities(2, 1, "theta")
    assert rec.passed and rec.lhs[0] == 3 == len(enumerate_T(2, 1))
    assert {c.X for c in enumerate_T(2, 1)} == {(), (1,), (1, 2)}
    assert len(enumerate_triples(2, 1, CYCLE)) == 5
    assert len(enumerate_triples(3, 1, CYCLE)) == 7


def test_T_counts_match_census():
    for n in range(2, 7):
        for m in range(1, 4):
            assert len(enumerate_T(n, m)) == alternating_sum(n, m) == line_sum(n, m)


def test_check_cardinalities_all():
    for n in range(2, 7):
        for m in range(1, 4):
            assert check_cardinalities(n, m, "theta").passed
            assert check_cardinalities(n, m, "phi").passed
    with pytest.raises(ValueError):
        check_cardinalities(1, 1, "theta")


def test_coloured_types_validate():
    with pytest.raises(ValueError):
        T((1,), (), ())
    with pytest.raises(ValueError):
        C((2, 1), (1, 1))
