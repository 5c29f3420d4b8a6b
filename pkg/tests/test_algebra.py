from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given

from qhomfly.algebra import (
    Laurent,
    LinkPoly,
    RatFuncX,
    laurent_gcd,
    maxdeg,
    pochhammer,
    render_laurent,
    render_linkpoly,
    series_at_q_infinity,
)

from conftest import laurents, linkpolys, nonzero_laurents, ratfuncs

Q = Laurent.monomial(2)  # q = x^2


# -- Laurent ----------------------------------------------------------------


@given(laurents(), laurents(), laurents())
def test_laurent_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Laurent()


@given(laurents(), nonzero_laurents())
def test_exact_division_inverts_multiplication(a, b):
    assert (a * b).exact_div(b) == a


@given(laurents())
def test_invert_is_involution(a):
    assert a.invert().invert() == a


def test_laurent_rejects_negative_power_of_polynomial():
    with pytest.raises(ValueError):
        (Laurent({0: 1, 1: 1})) ** -1
    assert Laurent.monomial(3, 2) ** -1 == Laurent.monomial(-3, Fraction(1, 2))


def test_laurent_exact_div_inexact_raises():
    with pytest.raises(ValueError, match="inexact"):
        Laurent({0: 1}).exact_div(Laurent({0: 1, 1: 1}))


def test_laurent_gcd_of_products():
    f = Laurent({0: 1, 2: -1})
    g = Laurent({0: 2, 1: 1})
    h = Laurent({0: 1, 1: 3})
    d = laurent_gcd(f * g, f * h)
    assert (f * g).exact_div(d) * d == f * g
    assert d.max_exp() - d.min_exp() == 2


# -- RatFuncX ---------------------------------------------------------------


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_ratfunc_field_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) * c == a * c + b * c
    if b:
        assert (a / b) * b == a


@given(ratfuncs())
def test_ratfunc_canonical_form(f):
    assert f.den.min_exp() == 0
    assert f.den.leading_coeff() == 1
    assert laurent_gcd(f.num, f.den).max_exp() == laurent_gcd(f.num, f.den).min_exp() or not f.num


def test_ratfunc_zero_divisor():
    with pytest.raises(ZeroDivisionError, match="zero divisor"):
        RatFuncX(Laurent({0: 1}), Laurent())
    with pytest.raises(ZeroDivisionError):
        RatFuncX(1) / RatFuncX(0)


def test_ratfunc_cancellation():
    one_minus_q = Laurent({0: 1, 2: -1})
    one_plus_q = Laurent({0: 1, 2: 1})
    f = RatFuncX(one_minus_q * one_minus_q, one_minus_q * one_plus_q)
    assert f == RatFuncX(one_minus_q, one_plus_q)
    assert f.den == one_plus_q
    assert RatFuncX(one_minus_q, Laurent({0: 1, 1: 1})).is_laurent()


@given(ratfuncs())
def test_invert_x_twice(f):
    assert f.invert_x().invert_x() == f


def test_expand_at_infinity_geometric():
    # 1 / (1 - q) = -q^-1 - q^-2 - ...
    f = RatFuncX(Laurent({0: 1}), Laurent({0: 1, 2: -1}))
    top, coeffs = f.expand_at_infinity(6)
    assert top == -2
    assert coeffs == [-1, 0, -1, 0, -1, 0]


# -- LinkPoly ---------------------------------------------------------------


@given(linkpolys(), linkpolys())
def test_linkpoly_arithmetic(a, b):
    assert (a + b) - b == a
    assert a * b == b * a


@given(linkpolys())
def test_linkpoly_json_round_trip(p):
    data = json.loads(json.dumps(p.to_json()))
    assert LinkPoly.from_json(data) == p


@given(linkpolys())
def test_substitutions_are_involutions(p):
    assert p.subst_q_inv().subst_q_inv() == p
    assert p.subst_a_inv().subst_a_inv() == p
    assert p.mirror() == p.subst_a_inv().subst_q_inv()


def test_specialize_a():
    # (a - 1) at a = q^2 is q^2 - 1
    p = LinkPoly.monomial(2) - LinkPoly.one()
    assert p.specialize_a(2) == RatFuncX(Laurent({4: 1, 0: -1}))


def test_maxdeg_of_rational_coefficient():
    # a^(3/2) q / (1 - q): top q-degree of the expansion at infinity is 0
    f = RatFuncX(Laurent({2: 1}), Laurent({0: 1, 2: -1}))
    p = LinkPoly.from_ratfunc(f, 3) + LinkPoly.monomial(-1, 4)
    assert maxdeg(p, "a") == Fraction(3, 2)
    assert maxdeg(p, "q") == 2
    assert maxdeg(LinkPoly.zero(), "q") == float("-inf")


def test_render_uses_half_powers_and_descending_order():
    p = LinkPoly.monomial(3, 1) + LinkPoly.monomial(-2, 0, -2)
    assert render_linkpoly(p) == "(q^(1/2))*a^(3/2) + (-2)*a^(-1)"
    assert render_laurent(Laurent({2: 1, -1: -1})) == "q - q^(-1/2)"


# -- q-series ---------------------------------------------------------------


def test_series_inverse_of_q_pochhammer():
    # 1 / (q^-1; q^-1)_inf = sum of partition numbers times q^-k
    base = LinkPoly.monomial(0, -2)
    s = pochhammer(base, -2, None, 8)
    inv = s.inverse()
    assert [inv.slice(k).coeff(0) for k in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


def test_divergent_product_rejected():
    with pytest.raises(ValueError, match="divergent"):
        pochhammer(LinkPoly.monomial(0, 2), 2, None, 3)


def test_series_at_infinity_matches_product():
    p = pochhammer(LinkPoly.monomial(-2, 0), -2, 3)  # (a^-1; q^-1)_3
    s = series_at_q_infinity(p, 4)
    direct = pochhammer(LinkPoly.monomial(-2, 0), -2, None, 4)
    assert s.agrees_with(direct, 3)
    assert not s.agrees_with(direct, 4)


def test_series_mixed_parity_rejected():
    with pytest.raises(ValueError):
        series_at_q_infinity(LinkPoly.monomial(0, 1) + LinkPoly.monomial(0, 0), 2)
