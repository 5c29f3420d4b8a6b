from __future__ import annotations

from fractions import Fraction

import pytest

from qhomfly.algebra import Laurent
from qhomfly.analysis import (
    bounds,
    finite_pochhammer_head,
    head,
    negative_twobraid_degree_formulas,
    negative_twobraid_head,
    normalize_head,
    slopes,
    slopes_from_polys,
    twobraid_k0_head,
    unknot_head_series,
)
from qhomfly.diagram import parse_braid
from qhomfly.oracles import t2_formula


def test_bounds_positive_trefoil():
    rep = bounds(parse_braid("2: 1 1 1"), 2)
    assert rep.a_bound == -1 and rep.a_attained
    assert rep.q_upper == 5
    assert rep.q_lower_positive == 1 and rep.q_actual == 1
    assert rep.conjecture_equal
    assert rep.to_json()["a_bound"] == "-1"


def test_bounds_mixed_word_has_no_lower_bound():
    rep = bounds(parse_braid("3: 1 -2 1 -2"), 1)
    assert rep.q_lower_positive is None and rep.q_lower_satisfied is None
    assert rep.satisfied


@pytest.mark.parametrize("c", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("r", [1, 2])
def test_positive_two_braid_top_degree(c, r):
    assert bounds(parse_braid("2: " + " 1" * c), r, t2_formula(c, r)).q_actual == Fraction(r, 2) * (c - 2)


def test_unknot_series_slices():
    s = unknot_head_series(3)
    assert s.slice(0) == Laurent({0: 1, -2: -1})
    assert s.slice(1) == Laurent({0: 1, -2: -2, -4: 1})


def test_k0_quotient_matches_unknot_series_but_finite_product_does_not():
    for r in (1, 2, 3):
        assert twobraid_k0_head(r).agrees_with(unknot_head_series(r), r)
    assert finite_pochhammer_head(1).agrees_with(unknot_head_series(1), 1)
    assert not finite_pochhammer_head(2).agrees_with(unknot_head_series(2), 2)


@pytest.mark.parametrize("word,r", [("2: 1 1", 2), ("2: 1 1 1", 2), ("3: 1 1 2 2", 1)])
def test_head_of_positive_words(word, r):
    h = head(parse_braid(word), r)
    assert h.prune_verified
    assert h.agrees_with(unknot_head_series(r))


def test_head_rejects_negative_words_and_thin_generators():
    with pytest.raises(ValueError, match="positive"):
        head(parse_braid("2: 1 -1"), 1)
    with pytest.raises(ValueError, match="at least twice"):
        head(parse_braid("2: 1"), 1, prune=True)
    assert head(parse_braid("2: 1"), 1, prune=False).d_r == Fraction(1, 2)


def test_negative_two_braid_head_values():
    # frozen normalized heads; the leading slice has a single factor (1 - a^-1)
    h = normalize_head(t2_formula(-2, 1), 1)
    assert h.head == (Laurent({0: 1, -2: -1}),)
    series = negative_twobraid_head(1, 1)
    assert series.slice(0) == Laurent({0: 1, -2: -2, -4: 1})


def test_slopes_of_negative_hopf():
    rep = slopes_from_polys({r: t2_formula(-2, r) for r in (1, 2, 3)})
    assert [e.maxdeg_q for e in rep.entries] == [0, 1, 4]
    formulas = [negative_twobraid_degree_formulas(2, r) for r in (1, 2, 3)]
    assert [f["k=r term analysis"] for f in formulas] == [0, 1, 4]
    assert [f["slope discussion"] for f in formulas] == [2, 5, 10]


def test_slopes_via_state_sum():
    rep = slopes(parse_braid("2: 1 1 1"), 2)
    assert rep.ratios == [Fraction(1, 2), Fraction(1, 4)]
    assert rep.differences == [Fraction(-1, 4)]
