"""Deterministic self-test matrix mirroring the acceptance criteria.

Each check returns a :class:`Check`.  ``run_selftest(deep=False)`` keeps the
run to desk-scale sizes; ``deep=True`` adds the color-3 2-braid heads and
the 3-strand word (sigma_1 sigma_2)^3 at color 2.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from .algebra import Laurent, LinkPoly, RatFuncX
from .analysis import (
    bounds,
    head,
    negative_twobraid_head,
    normalize_head,
    slopes_from_polys,
    twobraid_k0_head,
    unknot_head_series,
)
from .diagram import BraidWord, ResolutionIndex, parse_braid, resolve
from .oracles import calibrate_convention, homfly_skein, t2_formula
from .qehrhart import (
    EhrhartPoly,
    LinearForm,
    Poset,
    ehrhart,
    evaluate_at_N,
    evaluate_ehrhart,
    reciprocity_check,
    weighted_count,
)
from .statesum import (
    antisymmetric_eval,
    colored_homfly,
    key_graph,
    moy_bruteforce,
    resolution_terms,
    symmetric_eval,
)


@dataclass
class Check:
    number: int
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        extra = f"  [{self.detail}]" if self.detail else ""
        return f"{tag}  criterion {self.number}: {self.name}{extra}  ({self.seconds:.1f}s)"


# ---------------------------------------------------------------------------
# shared fixtures
# ---------------------------------------------------------------------------

def chain2() -> Tuple[Poset, LinearForm]:
    return Poset(("1", "2"), (("1", "2"),)), LinearForm((1, -1))


def hopf_closed_form() -> LinkPoly:
    """-(a^1/2 - a^-1/2) (a^-3/2 - a^-1/2 (q - 1 + q^-1)) / (q^1/2 - q^-1/2)^2."""
    one = LinkPoly.monomial
    first = one(1) - one(-1)
    second = one(-3) - one(-1) * LinkPoly.from_ratfunc(RatFuncX(Laurent({2: 1, 0: -1, -2: 1})))
    return (first * second * -1) / RatFuncX(Laurent({2: 1, 0: -2, -2: 1}))


def hopf_states() -> Dict[Tuple[int, int], LinkPoly]:
    """The three displayed graph values of the Hopf link."""
    one = LinkPoly.monomial
    s = RatFuncX(Laurent({1: 1, -1: -1}))
    A = one(1) - one(-1)
    B = one(1, 1) - one(-1, -1)
    return {
        (1, 1): (A * A) / (s * s),
        (0, 1): (A * B) / (s * s),
        (0, 0): (A * B * LinkPoly.from_ratfunc(RatFuncX(Laurent({1: 1, -1: 1})))) / (s * s),
    }


def random_poset(rng: random.Random, max_elems: int = 5, positive: bool = False) -> Tuple[Poset, LinearForm]:
    n = rng.randint(1, max_elems)
    els = tuple(f"e{i}" for i in range(n))
    covers = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.35:
                covers.append((els[i], els[j]))
    if positive:
        form = tuple(rng.randint(1, 3) for _ in range(n))
    else:
        form = tuple(rng.randint(-3, 3) for _ in range(n))
    return Poset(els, tuple(covers)), LinearForm(form)


SKEIN_WORDS = {
    "unknot": "2: 1",
    "hopf+": "2: 1 1",
    "hopf-": "2: -1 -1",
    "trefoil+": "2: 1 1 1",
    "trefoil-": "2: -1 -1 -1",
    "figure-eight": "3: 1 -2 1 -2",
    "T(2,5)": "2: 1 1 1 1 1",
}


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def crit1() -> Tuple[bool, str]:
    P, lam = chain2()
    E = ehrhart(P, lam)
    s = Laurent({0: 1, 2: -1})
    one_minus_q_sq = s * s
    # (a^-1 - 2q - b q + q^2 + b q^2) / (1-q)^2 as (e, i) -> C
    expected = EhrhartPoly.from_dict({
        (-1, 1): RatFuncX(Laurent({0: 1}), one_minus_q_sq),
        (0, 1): RatFuncX(Laurent({2: -1}), one_minus_q_sq),
        (0, 2): RatFuncX(Laurent({2: 1}), Laurent({2: 1, 0: -1})),
    })
    ok = E == expected
    w3 = evaluate_at_N(E, 3)
    ok &= w3 == Laurent({0: 4, -2: 3, -4: 2, -6: 1})
    recip = evaluate_ehrhart(E, (0, 6), -3, q_inverse=True)
    ok &= recip == LinkPoly.monomial(0, -2)
    rng = random.Random(20240601)
    for _ in range(10):
        Q, lam = random_poset(rng)
        Er = ehrhart(Q, lam)
        for N in range(5):
            if evaluate_at_N(Er, N) != weighted_count(Q, lam, N):
                return False, f"count mismatch on {Q} N={N}"
            if N >= 1 and not reciprocity_check(Q, lam, N, Er):
                return False, f"reciprocity mismatch on {Q} N={N}"
    return ok, "" if ok else "chain-of-2 example mismatch"


def crit2() -> Tuple[bool, str]:
    rng = random.Random(7)
    for _ in range(10):
        Q, lam = random_poset(rng, positive=True)
        if ehrhart(Q, lam).depends_on_b():
            return False, f"b-dependence for {Q}"
    return True, ""


def crit3() -> Tuple[bool, str]:
    b = parse_braid("2: 1 1")
    ok = colored_homfly(b, 1) == hopf_closed_form() == t2_formula(2, 1)
    for i, want in hopf_states().items():
        if symmetric_eval(resolve(b, ResolutionIndex(i, 1), 1)) != want:
            return False, f"[D{i}] mismatch"
    return ok, ""


def crit4() -> Tuple[bool, str]:
    cases = [(c, r) for r in (1, 2) for c in range(-3, 4)] + [(2, 3), (-2, 3)]
    bad = []
    for c, r in cases:
        b = BraidWord(2, tuple([1 if c > 0 else -1] * abs(c)))
        if colored_homfly(b, r) != t2_formula(c, r):
            bad.append((c, r))
    return not bad, f"mismatch {bad}" if bad else ""


def crit5() -> Tuple[bool, str]:
    conv = calibrate_convention()
    bad = [name for name, w in SKEIN_WORDS.items()
           if colored_homfly(parse_braid(w), 1) != homfly_skein(parse_braid(w), conv)]
    return not bad, f"mismatch {bad}" if bad else ""


def crit6() -> Tuple[bool, str]:
    for w in ("2: 1 1", "2: 1 1 1"):
        b = parse_braid(w)
        for r in (1, 2):
            for key in resolution_terms(b, r, +1):
                G = key_graph(key, r)
                for N in (2, 3):
                    ev = antisymmetric_eval(G, b=N, a_power=N).specialize_a(0)
                    if ev != RatFuncX(moy_bruteforce(G, N)):
                        return False, f"{w} r={r} key={key} N={N}"
    return True, ""


def crit7() -> Tuple[bool, str]:
    polys = [(parse_braid("2: 1 1"), 1)]
    polys += [(BraidWord(2, tuple([1 if c > 0 else -1] * abs(c))), r)
              for r in (1, 2) for c in range(-3, 4)] + [(parse_braid("2: 1 1"), 3), (parse_braid("2: -1 -1"), 3)]
    polys += [(parse_braid(w), 1) for w in SKEIN_WORDS.values()]
    for b, r in polys:
        rep = bounds(b, r)
        if not rep.satisfied:
            return False, f"bound violated for {b} r={r}"
        if b.is_positive() and b.letters and not rep.a_attained:
            return False, f"a-bound not attained for {b} r={r}"
        if b.strands == 2 and b.is_positive() and b.letters:
            c = len(b.letters)
            if rep.q_actual != Fraction(r, 2) * (c - 2):
                return False, f"maxdeg_q of sigma_1^{c} r={r} is {rep.q_actual}"
    return True, ""


def crit8(deep: bool = False) -> Tuple[bool, str]:
    words = [("2: 1", (1, 2, 3)), ("2: 1 1", (1, 2, 3)), ("2: 1 1 1", (1, 2, 3)), ("2: 1 1 1 1 1", (1, 2, 3))]
    words.append(("3: 1 2 1 2 1 2", (1, 2) if deep else (1,)))
    if not deep:
        words = [(w, tuple(r for r in rs if r <= 2)) for w, rs in words]
    for w, rs in words:
        b = parse_braid(w)
        for r in rs:
            prune = all(b.letters.count(k) >= 2 for k in set(b.letters))
            h = head(b, r, prune=prune)
            if not h.agrees_with(unknot_head_series(r)):
                return False, f"head of {w} r={r}"
            if b.strands == 2 and not h.agrees_with(twobraid_k0_head(r)):
                return False, f"2-braid head of {w} r={r}"
            if prune and not h.prune_verified:
                return False, f"prune of {w} r={r}"
    return True, ""


def crit9() -> Tuple[bool, str]:
    bad = []
    for c in (-2, -3):
        for r in (1, 2):
            h = normalize_head(t2_formula(c, r), r)
            if not h.agrees_with(negative_twobraid_head(r, r)):
                bad.append((c, r))
    return not bad, f"no match for (c, r) in {bad}" if bad else ""


def crit10() -> Tuple[bool, str]:
    for w in list(SKEIN_WORDS.values()):
        b = parse_braid(w)
        for r in (1, 2):
            if len(b.letters) > 4 and r == 2:
                continue
            P = colored_homfly(b, r)
            if colored_homfly(b.mirror(), r) != P.mirror():
                return False, f"mirror {w} r={r}"
    pairs = [("3: 1 1", "3: 2 2"), ("3: 1 2 2", "3: 2 2 1"), ("2: 1", "1:"), ("2: -1", "1:"),
             ("3: 1 1 2", "2: 1 1")]
    for r in (1, 2):
        for x, y in pairs:
            if colored_homfly(parse_braid(x), r) != colored_homfly(parse_braid(y), r):
                return False, f"Markov {x} vs {y} r={r}"
    return True, ""


def crit11() -> Tuple[bool, str]:
    neg = slopes_from_polys({r: t2_formula(-2, r) for r in (1, 2, 3)})
    pos = slopes_from_polys({r: t2_formula(3, r) for r in (1, 2, 3)})
    target = Fraction(1)
    dist = [abs(x - target) for x in neg.ratios]
    trend_neg = all(b < a for a, b in zip(dist, dist[1:]))
    pdist = [abs(x) for x in pos.ratios]
    trend_pos = all(b < a for a, b in zip(pdist, pdist[1:]))
    exact = [e.maxdeg_q for e in neg.entries] == [Fraction(r * r) - 2 * r + 1 for r in (1, 2, 3)]
    detail = f"neg ratios {[str(x) for x in neg.ratios]}, pos ratios {[str(x) for x in pos.ratios]}"
    return trend_neg and trend_pos and exact, detail


CRITERIA: List[Tuple[int, str, Callable[..., Tuple[bool, str]]]] = [
    (1, "q-Ehrhart chain-of-2 example and random posets", crit1),
    (2, "b-independence for positive forms", crit2),
    (3, "Hopf anchor", crit3),
    (4, "2-braid closed formula family", crit4),
    (5, "r = 1 skein equivalence", crit5),
    (6, "MOY brute-force specialization", crit6),
    (7, "degree bounds", crit7),
    (8, "head of positive words", crit8),
    (9, "negative 2-braid head series", crit9),
    (10, "mirror and Markov invariance", crit10),
    (11, "slope data", crit11),
]


def run_selftest(deep: bool = False) -> List[Check]:
    out = []
    for num, name, fn in CRITERIA:
        t = time.perf_counter()
        try:
            ok, detail = fn(deep) if num == 8 else fn()
        except Exception as exc:  # report, do not abort the matrix
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(Check(num, name, ok, detail, time.perf_counter() - t))
    return out
