from __future__ import annotations

import pytest

from qhomfly.algebra import LinkPoly
from qhomfly.diagram import parse_braid
from qhomfly.oracles import (
    ConventionMap,
    SkeinBudgetError,
    calibrate_convention,
    crosscheck,
    homfly_skein,
    t2_formula,
)
from qhomfly.statesum import colored_homfly

WORDS = ["2: 1", "2: 1 1", "2: -1 -1", "2: 1 1 1", "2: -1 -1 -1", "3: 1 -2 1 -2",
         "2: 1 1 1 1 1", "3: 1 2 1 2 1 2", "3: 1 -2 -2 1 -2"]


def test_calibrated_convention():
    assert calibrate_convention() == ConventionMap(v_alpha_exp=-1, z_sign=-1)


@pytest.mark.parametrize("word", WORDS)
def test_skein_matches_state_sum(word):
    b = parse_braid(word)
    assert homfly_skein(b, calibrate_convention()) == colored_homfly(b, 1)


def test_skein_unlink():
    conv = calibrate_convention()
    assert homfly_skein(parse_braid("3:"), conv) == conv.delta() ** 3


def test_skein_budget():
    with pytest.raises(SkeinBudgetError):
        homfly_skein(parse_braid("3: 1 -2 1 -2 1 -2"), budget=3)


def test_skein_relation_holds_on_oracle_values():
    conv = calibrate_convention()
    v, vi, z = conv.v(), conv.v_inv(), conv.z()
    plus = homfly_skein(parse_braid("2: 1 1 1"), conv)
    minus = homfly_skein(parse_braid("2: 1 -1 1"), conv)
    zero = homfly_skein(parse_braid("2: 1 1"), conv)
    assert vi * plus - v * minus == zero * LinkPoly.from_ratfunc(z)


def test_t2_mirror_symmetry():
    for r in (1, 2):
        for c in (1, 2, 3):
            assert t2_formula(-c, r) == t2_formula(c, r).mirror()


def test_t2_unknot_is_colour_independent_of_stabilization():
    # sigma_1^{+-1} both close to the unknot
    for r in (1, 2, 3):
        assert t2_formula(1, r) == t2_formula(-1, r)


def test_t2_rejects_colour_zero():
    with pytest.raises(ValueError):
        t2_formula(1, 0)


@pytest.mark.parametrize("word,r", [("2: 1 1", 1), ("2: 1 1 1", 2), ("2: -1 -1", 1)])
def test_crosscheck_matrix(word, r):
    rep = crosscheck(parse_braid(word), r, Ns=(2, 3))
    assert rep.ok, rep.lines()
    assert len(rep.results) >= 4
