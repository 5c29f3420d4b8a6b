"""Independent reference computations.

* :func:`t2_formula` evaluates the closed k-sum for the colored HOMFLY of
  2-braid closures T(2, c).
* :func:`homfly_skein` computes the uncolored HOMFLY of a braid closure by the
  classical skein recursion on descending diagrams.  It is written in Morton's
  variables (v, z) and translated to (a, q) through :class:`ConventionMap`.
* :func:`crosscheck` runs every applicable oracle pair for one braid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .algebra import Laurent, LinkPoly, RatFuncX, pochhammer
from .diagram import BraidWord
from .statesum import (
    HomflyConfig,
    antisym_homfly,
    antisymmetric_eval,
    colored_homfly,
    key_graph,
    moy_bruteforce,
    moy_homfly_N,
    resolution_terms,
)


# ---------------------------------------------------------------------------
# 2-braid closed formula
# ---------------------------------------------------------------------------


def _qpoch(alpha_exp: int, x_exp: int, k: int) -> LinkPoly:
    """(alpha^A x^B ; q^-1)_k."""
    return pochhammer(LinkPoly.monomial(alpha_exp, x_exp), -2, k)


def _scalar(p: LinkPoly) -> RatFuncX:
    if set(p.terms) - {0}:
        raise ValueError("expected an a-free factor")
    return p.coeff(0)


def t2_formula(c: int, r: int) -> LinkPoly:
    """P_r of the closure of sigma_1^c in B_2, from the closed k-sum

        (q^(r(r-1)/2) a^(r/2))^(-c) sum_{k=0..r} q^(c((r-k)^2-k)/2) (-1)^(c(r-k))
            a^r q^(-k-r) (q/a; 1/q)_k (1/a; 1/q)_(2r-k)
            / [ (1/q; 1/q)_k (1/q; 1/q)_(2(r-k)) (q^(-2(r-k+1)); 1/q)_k ]
    """
    if r < 1:
        raise ValueError("color must be at least 1")
    terms = []
    for k in range(r + 1):
        numer = _qpoch(-2, 2, k) * _qpoch(-2, 0, 2 * r - k)
        den = (_scalar(_qpoch(0, -2, k)) * _scalar(_qpoch(0, -2, 2 * (r - k)))
               * _scalar(_qpoch(0, -4 * (r - k + 1), k)))
        if den.is_zero():
            raise ZeroDivisionError(f"vanishing denominator in the k={k} term")
        sign = -1 if (c * (r - k)) % 2 else 1
        xe = c * ((r - k) ** 2 - k) + 2 * (-k - r)
        terms.append((numer / den).shift(2 * r, xe, sign))
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    return total.shift(-r * c, -r * (r - 1) * c)


# ---------------------------------------------------------------------------
# skein recursion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConventionMap:
    """Dictionary between Morton's (v, z) and (a, q).

    v = a^(v_alpha_exp / 2) and z = z_sign * (q^(1/2) - q^(-1/2)).  The
    skein polynomial is unreduced: the mu-component unlink is delta^mu with
    delta = (v^-1 - v) / z.
    """

    v_alpha_exp: int = -1
    z_sign: int = -1
    reduced: bool = False

    def v(self) -> LinkPoly:
        return LinkPoly.monomial(self.v_alpha_exp)

    def v_inv(self) -> LinkPoly:
        return LinkPoly.monomial(-self.v_alpha_exp)

    def z(self) -> RatFuncX:
        return RatFuncX(Laurent({1: self.z_sign, -1: -self.z_sign}))

    def delta(self) -> LinkPoly:
        return (self.v_inv() - self.v()) / self.z()


class SkeinBudgetError(RuntimeError):
    """The skein recursion exceeded its call budget."""


def _bad_crossing(n: int, letters: Tuple[int, ...]) -> Tuple[Optional[int], int]:
    """First crossing met from below in the descending traversal, and the
    number of components.

    Components are traversed in order of their lowest bottom position, each
    from its bottom position upward; sigma_k^{+1} has the left strand over.
    """
    L = len(letters)
    seen = [False] * L
    done_start = [False] * n
    comps = 0
    for start in range(n):
        if done_start[start]:
            continue
        comps += 1
        pos = start
        while True:
            done_start[pos] = True
            for t, k in enumerate(letters):
                a = abs(k)
                if pos == a - 1 or pos == a:
                    on_left = pos == a - 1
                    over = on_left if k > 0 else not on_left
                    if not seen[t]:
                        seen[t] = True
                        if not over:
                            return t, comps
                    pos = a if on_left else a - 1
            if pos == start:
                break
    return None, comps


def homfly_skein(b: BraidWord, conv: Optional[ConventionMap] = None, budget: int = 200000) -> LinkPoly:
    """Unreduced HOMFLY of the closure of ``b`` via v^-1 P+ - v P- = z P0."""
    conv = conv or ConventionMap()
    v, vi, z, delta = conv.v(), conv.v_inv(), conv.z(), conv.delta()
    v2, vi2 = v * v, vi * vi
    calls = [0]

    @lru_cache(maxsize=None)
    def P(n: int, letters: Tuple[int, ...]) -> LinkPoly:
        calls[0] += 1
        if calls[0] > budget:
            raise SkeinBudgetError(f"skein recursion exceeded {budget} calls")
        t, comps = _bad_crossing(n, letters)
        if t is None:
            return delta ** comps
        flipped = letters[:t] + (-letters[t],) + letters[t + 1:]
        smoothed = letters[:t] + letters[t + 1:]
        if letters[t] > 0:
            return v2 * P(n, flipped) + (v * z) * P(n, smoothed)
        return vi2 * P(n, flipped) - (vi * z) * P(n, smoothed)

    return P(b.strands, b.letters)


def calibrate_convention() -> ConventionMap:
    """Pick the sign of z that makes the skein unknot agree with the T2 unknot."""
    target = t2_formula(1, 1)
    for sign in (-1, 1):
        conv = ConventionMap(z_sign=sign)
        if homfly_skein(BraidWord(2, (1,)), conv) == target:
            return conv
    raise AssertionError("no sign convention reproduces the T2 unknot")


# ---------------------------------------------------------------------------
# crosscheck matrix
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class CrosscheckReport:
    braid: BraidWord
    r: int
    results: List[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.results)

    def lines(self) -> List[str]:
        return [f"{'PASS' if c.ok else 'FAIL'}  {c.name}" + (f"  ({c.detail})" if c.detail else "")
                for c in self.results]


def _is_two_braid_power(b: BraidWord) -> bool:
    return b.strands == 2 and all(abs(k) == 1 for k in b.letters) and (
        all(k > 0 for k in b.letters) or all(k < 0 for k in b.letters))


def crosscheck(b: BraidWord, r: int, Ns: Sequence[int] = (2,), config: Optional[HomflyConfig] = None) -> CrosscheckReport:
    """Run every oracle pair that applies to (b, r) and record exact equality."""
    rep = CrosscheckReport(b, r)
    sym = colored_homfly(b, r, config)
    if _is_two_braid_power(b):
        c = len(b.letters) * (1 if not b.letters or b.letters[0] > 0 else -1)
        t2 = t2_formula(c, r)
        rep.results.append(CheckResult("symmetric == T2", sym == t2, "" if sym == t2 else f"diff {sym - t2}"))
    if r == 1:
        sk = homfly_skein(b, calibrate_convention())
        rep.results.append(CheckResult("symmetric == skein", sym == sk, "" if sym == sk else f"diff {sym - sk}"))
    cfg = config or HomflyConfig()
    anti = antisym_homfly(b, r, cfg)
    # with the calibrated prefactors the two sums are exchanged by q -> 1/q;
    # the verbatim prefactors differ by the extra sign (-1)^(c+ - c-)
    w = sum(1 if k > 0 else -1 for k in b.letters)
    sign = 1 if cfg.sign_convention == "calibrated" else (-1) ** (w % 2)
    transformed = anti.subst_q_inv() * sign
    rep.results.append(CheckResult("symmetry transform", transformed == sym))
    thick = cfg.thick_side
    for N in Ns:
        if N > 4:
            raise ValueError("brute-force N must be at most 4")
        lhs = moy_homfly_N(b, r, N, thick, cfg.sign_convention)
        rhs = antisym_homfly(b, r, config, check_b=False, a_power=N).specialize_a(0)
        ok = rhs == RatFuncX(lhs)
        rep.results.append(CheckResult(f"anti-symmetric(a=q^{N}) == MOY brute force N={N}", ok))
        graph_ok = True
        for key in resolution_terms(b, r, +1):
            G = key_graph(key, r, thick)
            bf = moy_bruteforce(G, N)
            ev = antisymmetric_eval(G, b=N, a_power=N).specialize_a(0)
            if ev != RatFuncX(bf):
                graph_ok = False
        rep.results.append(CheckResult(f"graph-level <D>(q^{N}, b={N}) == <D>_{N}", graph_ok))
    return rep
