from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qhomfly.diagram import (
    BraidParseError,
    BraidWord,
    ResolutionIndex,
    elementary_flows,
    intersection_number,
    intersection_number_x4,
    parse_braid,
    resolve,
    stats,
)

words = st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=4).map(lambda l: BraidWord(3, tuple(l)))


def test_parse_forms():
    assert parse_braid("1 -2 1") == BraidWord(3, (1, -2, 1))
    assert parse_braid("aBa") == BraidWord(3, (1, -2, 1))
    assert parse_braid("4: 1,2") == BraidWord(4, (1, 2))
    assert parse_braid("B2: a") == BraidWord(2, (1,))
    assert parse_braid("1:") == BraidWord(1, ())


@pytest.mark.parametrize("text", ["0", "1 x", "1 ?", "2: 2", "0: "])
def test_parse_errors(text):
    with pytest.raises(BraidParseError):
        parse_braid(text)


def test_stats_of_figure_eight():
    st_ = stats(parse_braid("1 -2 1 -2"))
    assert (st_.c_plus, st_.c_minus, st_.writhe) == (2, 2, 0)
    assert st_.seifert_circles == 3


def test_components():
    assert parse_braid("1 1").components() == 2
    assert parse_braid("1 1 1").components() == 1
    assert parse_braid("3:").components() == 3


@given(words)
def test_mirror_and_rotation(b):
    assert b.mirror().mirror() == b
    assert stats(b.mirror()).writhe == -stats(b).writhe
    assert b.rotate(1).components() == b.components()


@given(words, st.integers(1, 2))
def test_resolved_graphs_are_conservative(b, r):
    idx = ResolutionIndex(tuple(i % (r + 1) for i in range(len(b.letters))), r)
    resolve(b, idx, r).check()


def _hopf(i):
    return resolve(parse_braid("2: 1 1"), ResolutionIndex(i, 1), 1)


def test_hopf_smoothing_flows():
    G = _hopf((1, 1))
    flows = elementary_flows(G)
    assert len(flows) == 3
    assert sorted(f.rot for f in flows) == [1, 1, 2]
    assert sorted(len(f.components) for f in flows) == [1, 1, 2]


def test_hopf_mixed_flows_and_pairing():
    G = _hopf((0, 1))
    f, g = elementary_flows(G)
    assert f.rot == g.rot == 1
    assert intersection_number(G, f.support, g.support) == -intersection_number(G, g.support, f.support)
    assert abs(intersection_number(G, f.support, g.support)) == Fraction(1, 2)


def test_hopf_double_vertex_flows():
    assert len(elementary_flows(_hopf((0, 0)))) == 4


@given(words, st.integers(1, 2))
def test_pairing_is_antisymmetric(b, r):
    G = resolve(b, ResolutionIndex(tuple([0] * len(b.letters)), r), r)
    fl = elementary_flows(G)
    for f in fl[:4]:
        assert intersection_number_x4(G, f.support, f.support) == 0
        for g in fl[:4]:
            assert intersection_number_x4(G, f.support, g.support) == -intersection_number_x4(G, g.support, f.support)


def test_empty_braid_is_a_single_loop():
    G = resolve(parse_braid("1:"), ResolutionIndex((), 2), 2)
    (f,) = elementary_flows(G)
    assert f.rot == 1


def test_resolution_index_range():
    with pytest.raises(ValueError):
        ResolutionIndex((3,), 2)
