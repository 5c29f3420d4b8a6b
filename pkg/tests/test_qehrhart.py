from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from qhomfly.algebra import Laurent, LinkPoly, RatFuncX
from qhomfly.qehrhart import (
    LatticeSimplex,
    LinearForm,
    Poset,
    ehrhart,
    ehrhart_degree_bound_check,
    ehrhart_order_polytope,
    ehrhart_simplex,
    evaluate_at_N,
    evaluate_ehrhart,
    lattice_points,
    load_poset,
    polytope_dim,
    reciprocity_check,
    weighted_count,
)

ONE_MINUS_Q = Laurent({0: 1, 2: -1})


def chain2():
    return Poset(("1", "2"), (("1", "2"),)), LinearForm((1, -1))


@st.composite
def posets(draw, max_elems=4, positive=False):
    n = draw(st.integers(1, max_elems))
    els = tuple(f"p{i}" for i in range(n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    lo = 1 if positive else -3
    form = tuple(draw(st.integers(lo, 3)) for _ in range(n))
    return Poset(els, tuple((els[i], els[j]) for i, j in chosen)), LinearForm(form)


def test_chain_of_two_frozen():
    P, lam = chain2()
    E = ehrhart(P, lam)
    assert E.as_dict() == {
        (-1, 1): RatFuncX(1, ONE_MINUS_Q * ONE_MINUS_Q),
        (0, 1): RatFuncX(Laurent({2: -1}), ONE_MINUS_Q * ONE_MINUS_Q),
        (0, 2): RatFuncX(Laurent({2: 1}), Laurent({2: 1, 0: -1})),
    }
    assert evaluate_at_N(E, 3) == Laurent({0: 4, -2: 3, -4: 2, -6: 1})
    assert evaluate_ehrhart(E, (0, 6), -3, q_inverse=True) == LinkPoly.monomial(0, -2)


def test_chain_of_two_at_a_over_q():
    # E(a/q, -1, q) = (a^-1 - 1) q / (q - 1)^2
    E = ehrhart(*chain2())
    got = evaluate_ehrhart(E, (2, -2), -1)
    want = (LinkPoly.monomial(-2, 2) - LinkPoly.monomial(0, 2)) / RatFuncX(ONE_MINUS_Q * ONE_MINUS_Q)
    assert got == want


def test_antichain_without_weight_counts_points():
    E = ehrhart(Poset.antichain(1), LinearForm((0,)))
    assert [evaluate_at_N(E, N) for N in range(4)] == [Laurent({0: N + 1}) for N in range(4)]
    assert E.depends_on_b()


@settings(max_examples=25, deadline=None)
@given(posets())
def test_counts_match_enumeration(data):
    P, lam = data
    E = ehrhart(P, lam)
    for N in range(4):
        assert evaluate_at_N(E, N) == weighted_count(P, lam, N)


@settings(max_examples=20, deadline=None)
@given(posets(), st.integers(1, 3))
def test_reciprocity(data, N):
    assert reciprocity_check(*data, N)


@settings(max_examples=25, deadline=None)
@given(posets(positive=True))
def test_positive_forms_are_b_independent(data):
    assert not ehrhart(*data).depends_on_b()


@settings(max_examples=20, deadline=None)
@given(posets())
def test_degree_bound(data):
    assert ehrhart_degree_bound_check(*data)


def test_chain_simplex_agrees_with_order_polytope():
    lam = LinearForm((2, -1, 1))
    P = Poset.chain(3)
    # the chain v1 <= v2 <= v3 in the unit cube is the simplex with these vertices
    S = LatticeSimplex(((0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)))
    assert ehrhart_simplex(S, lam) == ehrhart_order_polytope(P, lam)


def test_non_unimodular_simplex():
    S = LatticeSimplex(((0, 0), (2, 0), (0, 1)))
    lam = LinearForm((1, 1))
    E = ehrhart(S, lam)
    for N in range(5):
        assert evaluate_at_N(E, N) == weighted_count(S, lam, N)
    assert reciprocity_check(S, lam, 2, E)
    assert polytope_dim(S) == 2


def test_degenerate_simplex_rejected():
    with pytest.raises(ValueError):
        LatticeSimplex(((0, 0), (1, 1), (2, 2)))


def test_poset_validation():
    with pytest.raises(ValueError, match="cycle"):
        Poset(("a", "b"), (("a", "b"), ("b", "a")))
    with pytest.raises(ValueError, match="unknown"):
        Poset(("a",), (("a", "z"),))


def test_load_poset_json():
    P, lam = load_poset(json.dumps({"elements": ["x", "y"], "covers": [["x", "y"]], "form": {"x": 1, "y": -1}}))
    assert P.covers == (("x", "y"),)
    assert lam.coeffs == (1, -1)
    with pytest.raises(ValueError, match="unknown"):
        load_poset({"elements": ["x"], "form": {"z": 1}})


def test_lattice_points_interior_of_chain():
    P, _ = chain2()
    assert sorted(lattice_points(P, 3, interior=True)) == [(1, 2)]
