from __future__ import annotations

import pytest
from hypothesis import settings, strategies as st

from qhomfly.algebra import Laurent, LinkPoly, RatFuncX
from qhomfly.statesum import clear_caches

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_int = st.integers(min_value=-4, max_value=4)


@st.composite
def laurents(draw, max_terms: int = 4, exp_range: int = 6):
    terms = draw(st.dictionaries(st.integers(-exp_range, exp_range), small_int, max_size=max_terms))
    return Laurent(terms)


@st.composite
def nonzero_laurents(draw, **kw):
    p = draw(laurents(**kw))
    return p if p else Laurent.monomial(draw(st.integers(-3, 3)), draw(st.sampled_from([1, -1, 2])))


@st.composite
def ratfuncs(draw):
    return RatFuncX(draw(laurents()), draw(nonzero_laurents(max_terms=3, exp_range=4)))


@st.composite
def linkpolys(draw):
    keys = draw(st.lists(st.integers(-4, 4), max_size=3, unique=True))
    return LinkPoly({k: draw(ratfuncs()) for k in keys})


@pytest.fixture(autouse=False)
def fresh_caches():
    clear_caches()
    yield
    clear_caches()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
