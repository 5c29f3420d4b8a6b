"""Degree bounds, heads and slope data computed from colored HOMFLY values."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .algebra import Laurent, LinkPoly, QSeries, maxdeg, pochhammer, render_laurent, series_at_q_infinity
from .diagram import BraidWord, stats
from .statesum import HomflyConfig, colored_homfly

Half = Union[Fraction, float]


def half_str(v: Optional[Half]) -> Optional[str]:
    """Serialize a half-integer as ``"p/2"`` (integers as ``"p"``)."""
    if v is None:
        return None
    if isinstance(v, float):
        return "-inf" if v < 0 else "inf"
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


# ---------------------------------------------------------------------------
# degree bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundsReport:
    r: int
    a_bound: Fraction
    q_upper: Fraction
    q_lower_positive: Optional[Fraction]
    a_actual: Half
    q_actual: Half
    a_satisfied: bool
    q_upper_satisfied: bool
    q_lower_satisfied: Optional[bool]
    a_attained: bool
    conjectured_q: Optional[Fraction]
    conjecture_equal: Optional[bool]

    @property
    def satisfied(self) -> bool:
        return self.a_satisfied and self.q_upper_satisfied and self.q_lower_satisfied is not False

    def to_json(self) -> dict:
        out = {}
        for k, v in asdict(self).items():
            out[k] = half_str(v) if isinstance(v, (Fraction, float)) else v
        return out


def bounds(b: BraidWord, r: int, P: Optional[LinkPoly] = None,
           config: Optional[HomflyConfig] = None) -> BoundsReport:
    """Compare the degree bounds computed from the diagram with the actual
    degrees of P_r.

    a-bound: (r/2)(-c+ + c- + s+ + s-)
    q-upper: (r/2)(s+ - s- + c+ + c-(2r - 1))
    q-lower (positive diagrams only): (r/2)(-s+ - s- + c+)
    """
    st = stats(b)
    if P is None:
        P = colored_homfly(b, r, config)
    h = Fraction(r, 2)
    a_bound = h * (-st.c_plus + st.c_minus + st.s_plus + st.s_minus)
    q_upper = h * (st.s_plus - st.s_minus + st.c_plus + st.c_minus * (2 * r - 1))
    positive = st.c_minus == 0
    q_lower = h * (-st.s_plus - st.s_minus + st.c_plus) if positive else None
    a_act = maxdeg(P, "a")
    q_act = maxdeg(P, "q")
    conj = h * (st.c_plus - st.s_plus - st.s_minus) if positive else None
    return BoundsReport(
        r=r,
        a_bound=a_bound,
        q_upper=q_upper,
        q_lower_positive=q_lower,
        a_actual=a_act,
        q_actual=q_act,
        a_satisfied=a_act <= a_bound,
        q_upper_satisfied=q_act <= q_upper,
        q_lower_satisfied=(q_lower <= q_act) if positive else None,
        a_attained=a_act == a_bound,
        conjectured_q=conj,
        conjecture_equal=(q_act == conj) if positive else None,
    )


def top_a_coefficient(P: LinkPoly) -> LinkPoly:
    """The coefficient of the highest power of a, as a polynomial in q."""
    e = max(P.terms)
    return LinkPoly.from_ratfunc(P.coeff(e))


# ---------------------------------------------------------------------------
# heads
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HeadReport:
    """Normalized top slices of P_r in descending powers of q.

    ``d_r`` is minus the top q-degree, ``f_r`` the exponent of a used for
    normalization, ``lead`` the rational coefficient divided out (its sign
    is the sign of the raw leading term).  ``head`` holds the normalized
    slices as Laurent polynomials in alpha = a^(1/2).
    """

    r: int
    d_r: Fraction
    f_r: Fraction
    lead: Fraction
    head: Tuple[Laurent, ...]
    prune_verified: Optional[bool] = None

    @property
    def sign(self) -> int:
        return 1 if self.lead > 0 else -1

    def agrees_with(self, series: QSeries, n: Optional[int] = None) -> bool:
        n = self.r if n is None else n
        if series.is_zero() or series.top != 0:
            return False
        return all(self.head[k] == series.slice(k) for k in range(n))

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "d_r": half_str(self.d_r),
            "f_r": half_str(self.f_r),
            "lead": half_str(self.lead) if self.lead.denominator <= 2 else str(self.lead),
            "sign": self.sign,
            "head": [render_laurent(s, "a", 2) for s in self.head],
            "prune_verified": self.prune_verified,
        }


def normalize_head(P: LinkPoly, r: int, n_slices: Optional[int] = None) -> HeadReport:
    """Expand P in q^-1 and rescale so the top a-term of the first slice is 1."""
    n = r if n_slices is None else n_slices
    s = series_at_q_infinity(P, n)
    if s.is_zero():
        raise ValueError("cannot take the head of the zero polynomial")
    lead_slice = s.coeffs[0]
    top_alpha = lead_slice.max_exp()
    lead = Fraction(lead_slice.coeff(top_alpha))
    normed = s.scale(-top_alpha, 1 / lead)
    return HeadReport(
        r=r,
        d_r=-Fraction(s.top, 2),
        f_r=-Fraction(top_alpha, 2),
        lead=lead,
        head=tuple(normed.slice(k) for k in range(n)),
    )


def head(b: BraidWord, r: int, prune: bool = True, config: Optional[HomflyConfig] = None,
         P: Optional[LinkPoly] = None) -> HeadReport:
    """Head of P_r for a positive braid closure.

    With ``prune`` the state sum skips flows with more than one component and
    the first r slices are checked against the unpruned computation.
    """
    if not b.is_positive():
        raise ValueError("head requires a positive braid word")
    if prune:
        counts: Dict[int, int] = {}
        for k in b.letters:
            counts[k] = counts.get(k, 0) + 1
        thin = sorted(k for k, v in counts.items() if v < 2)
        if thin:
            raise ValueError(f"pruning needs every generator at least twice; generators {thin} occur once")
    cfg = config or HomflyConfig()
    full = P if P is not None else colored_homfly(b, r, cfg)
    rep = normalize_head(full, r)
    if not prune:
        return rep
    pcfg = HomflyConfig(cfg.thick_side, cfg.sign_convention, cfg.max_resolutions, cfg.workers, True)
    pruned = colored_homfly(b, r, pcfg)
    ok = series_at_q_infinity(pruned, r).agrees_with(series_at_q_infinity(full, r), r)
    if not ok:
        raise AssertionError("pruned and unpruned heads differ")
    return HeadReport(rep.r, rep.d_r, rep.f_r, rep.lead, rep.head, True)


def unknot_head_series(order: int) -> QSeries:
    """(a^-1; q^-1)_inf / (q^-1; q^-1)_inf truncated to ``order`` slices."""
    num = pochhammer(LinkPoly.monomial(-2, 0), -2, None, order)
    den = pochhammer(LinkPoly.monomial(0, -2), -2, None, order)
    return num / den


def twobraid_k0_head(r: int, order: Optional[int] = None) -> QSeries:
    """Head predicted by the k = 0 term of the 2-braid formula:
    (a^-1; q^-1)_2r / (q^-1; q^-1)_2r, truncated to r slices."""
    order = r if order is None else order
    num = pochhammer(LinkPoly.monomial(-2, 0), -2, 2 * r)
    den = pochhammer(LinkPoly.monomial(0, -2), -2, 2 * r)
    return series_at_q_infinity(num, order) / series_at_q_infinity(den, order)


def finite_pochhammer_head(r: int) -> QSeries:
    """The finite product (a^-1; q^-1)_r as a series with r slices."""
    return series_at_q_infinity(pochhammer(LinkPoly.monomial(-2, 0), -2, r), r)


def negative_twobraid_head(r: int, trunc: int) -> QSeries:
    """(a^-1; q^-1)_inf^2 / ((q^-1; q^-1)_inf (q^-2; q^-1)_inf), ``trunc`` slices."""
    if trunc < 1:
        raise ValueError("trunc must be at least 1")
    a_part = pochhammer(LinkPoly.monomial(-2, 0), -2, None, trunc)
    q1 = pochhammer(LinkPoly.monomial(0, -2), -2, None, trunc)
    q2 = pochhammer(LinkPoly.monomial(0, -4), -2, None, trunc)
    return (a_part * a_part) / (q1 * q2)


# ---------------------------------------------------------------------------
# slopes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SlopeEntry:
    r: int
    maxdeg_q: Fraction
    ratio: Fraction


@dataclass(frozen=True)
class SlopeReport:
    entries: Tuple[SlopeEntry, ...]

    @property
    def ratios(self) -> List[Fraction]:
        return [e.ratio for e in self.entries]

    @property
    def differences(self) -> List[Fraction]:
        rs = self.ratios
        return [b - a for a, b in zip(rs, rs[1:])]

    def to_json(self) -> dict:
        return {
            "entries": [
                {"r": e.r, "maxdeg_q": half_str(e.maxdeg_q), "ratio": str(e.ratio)} for e in self.entries
            ],
            "differences": [str(d) for d in self.differences],
        }


def slopes(b: BraidWord, R: int, config: Optional[HomflyConfig] = None,
           values: Optional[Dict[int, LinkPoly]] = None) -> SlopeReport:
    """r^-2 maxdeg_q P_r for r = 1..R (raw data, no limit is claimed)."""
    out = []
    for r in range(1, R + 1):
        P = values[r] if values and r in values else colored_homfly(b, r, config)
        m = maxdeg(P, "q")
        out.append(SlopeEntry(r, m, Fraction(m) / (r * r)))
    return SlopeReport(tuple(out))


def slopes_from_polys(polys: Dict[int, LinkPoly]) -> SlopeReport:
    out = []
    for r in sorted(polys):
        m = maxdeg(polys[r], "q")
        out.append(SlopeEntry(r, m, Fraction(m) / (r * r)))
    return SlopeReport(tuple(out))


def negative_twobraid_degree_formulas(c_minus: int, r: int) -> Dict[str, Fraction]:
    """The two stated closed forms for maxdeg_q of T(2, -c_minus)."""
    return {
        "k=r term analysis": Fraction(c_minus * r * r, 2) - 2 * r + 1,
        "slope discussion": Fraction(c_minus * r * r, 2) + 1,
    }
