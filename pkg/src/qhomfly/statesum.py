"""State sums over MOY graphs and the colored HOMFLY polynomial of braid
closures.

Both the symmetric evaluation [G] and the anti-symmetric evaluation <G> are
sums over ordered sequences of elementary flows adding up to the graph's
labelling gamma.  Rather than listing sequences one by one, the evaluators
run a dynamic program over partial sums P of flows.  Two facts make this
exact:

* the pairing <.,.> is bilinear, so appending a flow e to a prefix with sum P
  raises the weight by <P, e>;
* the rotation number is additive, so the suffix sums of rotation numbers
  that fix the chain order polytope's q-Ehrhart polynomial are
  rot(gamma) - rot(P_t) over the visited prefixes.

A DP state therefore only needs P, rot(P), the multiset of visited prefix
rotations and the running weight.  ``enumerate_sequences`` keeps the naive
sequence listing as a cross-check.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .algebra import ZERO, Laurent, LinkPoly, linkpoly_sum
from .diagram import (
    BraidWord,
    ElementaryFlow,
    MOYGraph,
    ResolutionIndex,
    elementary_flows,
    intersection_number_x4,
    make_flow,
    resolve,
    stats,
)
from .qehrhart import EhrhartPoly, ehrhart_from_exponents, evaluate_ehrhart

DEFAULT_MAX_RESOLUTIONS = 65536
ENV_MAX_RESOLUTIONS = "HOMFLY_MAX_RESOLUTIONS"


class ResolutionLimitError(ValueError):
    """The number of resolutions (r+1)^c exceeds the configured guard."""


class BDependenceError(ArithmeticError):
    """An anti-symmetric evaluation still depends on the auxiliary variable b."""


# ---------------------------------------------------------------------------
# sequences of elementary flows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FlowSequence:
    """Ordered flows (indices into the graph's flow list) summing to gamma."""

    seq: Tuple[int, ...]
    weight_x4: int
    rot_sum: int

    @property
    def length(self) -> int:
        return len(self.seq)

    def suffix_rotations(self, flows: Sequence[ElementaryFlow]) -> Tuple[int, ...]:
        """Vertex lambda-values of the chain order polytope, ending with 0."""
        out = []
        s = 0
        for j in reversed(self.seq):
            s += flows[j].rot
            out.append(s)
        return tuple(reversed(out)) + (0,)


def _add(p: Tuple[int, ...], e: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(a + b for a, b in zip(p, e))


def _fits(p: Tuple[int, ...], e: Tuple[int, ...], gamma: Tuple[int, ...]) -> bool:
    return all(a + b <= g for a, b, g in zip(p, e, gamma))


def enumerate_sequences(G: MOYGraph, gamma: Optional[Sequence[int]] = None,
                        flows: Optional[List[ElementaryFlow]] = None) -> Iterator[FlowSequence]:
    """All ordered sequences of elementary flows with edgewise sum gamma."""
    gamma = tuple(G.gamma if gamma is None else gamma)
    if flows is None:
        flows = elementary_flows(G)
    zero = tuple(0 for _ in gamma)

    def rec(p, seq, w4, rot):
        if p == gamma:
            yield FlowSequence(tuple(seq), w4, rot)
            return
        for j, f in enumerate(flows):
            if _fits(p, f.support, gamma):
                seq.append(j)
                yield from rec(_add(p, f.support), seq, w4 + intersection_number_x4(G, p, f.support), rot + f.rot)
                seq.pop()

    yield from rec(zero, [], 0, 0)


# ---------------------------------------------------------------------------
# aggregated dynamic program
# ---------------------------------------------------------------------------

Aggregate = Dict[Tuple[Tuple[int, ...], int], int]


def aggregate_sequences(G: MOYGraph, flows: Optional[List[ElementaryFlow]] = None,
                        skip_multicomponent: bool = False) -> Tuple[int, Aggregate]:
    """Collapse all sequences to ``{(exponents, 4w): signed count}``.

    ``exponents`` is the sorted multiset of chain vertex values (suffix
    rotation sums including the final 0) and the count carries the sign
    (-1)^length.  Returns ``(rot(gamma), aggregate)``.
    """
    gamma = G.gamma
    if flows is None:
        flows = elementary_flows(G)
    if skip_multicomponent:
        flows = [f for f in flows if f.size == 1]
    lr = G.lr_pairs()
    fdata = []
    for f in flows:
        s = f.support
        # 4<P, f> = sum_v P[L] f[R] - f[L] P[R]: linear in P with these weights
        coef: Dict[int, int] = defaultdict(int)
        for L, R in lr:
            if s[R]:
                coef[L] += 1
            if s[L]:
                coef[R] -= 1
        fdata.append((s, f.rot, tuple((e, c) for e, c in coef.items() if c)))
    zero = tuple(0 for _ in gamma)
    total = sum(gamma)
    # level -> {(P, rotP, prefix-multiset): Counter(w4 -> count)}
    levels: Dict[int, Dict[Tuple, Counter]] = defaultdict(dict)
    levels[0][(zero, 0, ())] = Counter({0: 1})
    done: Dict[Tuple[int, ...], Counter] = defaultdict(Counter)
    final_rot = None
    for lev in range(total + 1):
        states = levels.pop(lev, None)
        if not states:
            continue
        for (p, rp, key), wc in states.items():
            if p == gamma:
                final_rot = rp
                done[key].update(wc)
                continue
            newkey = tuple(sorted(key + (rp,)))
            for s, rot, coef in fdata:
                if not _fits(p, s, gamma):
                    continue
                dw = sum(p[e] * c for e, c in coef)
                np_ = _add(p, s)
                nl = lev + sum(s)
                bucket = levels[nl]
                st = (np_, rp + rot, newkey)
                tgt = bucket.get(st)
                if tgt is None:
                    tgt = bucket[st] = Counter()
                for w, c in wc.items():
                    tgt[w + dw] -= c
    if final_rot is None:
        return 0, {}
    agg: Aggregate = {}
    for key, wc in done.items():
        exps = tuple(sorted([final_rot - v for v in key] + [0]))
        for w, c in wc.items():
            if c:
                k = (exps, w)
                agg[k] = agg.get(k, 0) + c
    return final_rot, {k: v for k, v in agg.items() if v}


@lru_cache(maxsize=None)
def chain_ehrhart(exps: Tuple[int, ...]) -> EhrhartPoly:
    """q-Ehrhart polynomial of a chain order polytope with vertex values ``exps``."""
    return ehrhart_from_exponents(exps)


@lru_cache(maxsize=None)
def _sym_piece(exps: Tuple[int, ...]) -> LinkPoly:
    return evaluate_ehrhart(chain_ehrhart(exps), (2, -2), -1)


@lru_cache(maxsize=None)
def _antisym_piece(exps: Tuple[int, ...], b: int, a_subst: Tuple[int, int]) -> LinkPoly:
    return evaluate_ehrhart(chain_ehrhart(exps), a_subst, -b - 1, q_inverse=True)


def _half(w4: int) -> int:
    if w4 % 2:
        raise AssertionError("weight is not a half-integer power of q")
    return w4 // 2


def symmetric_eval(G: MOYGraph, flows: Optional[List[ElementaryFlow]] = None,
                   skip_multicomponent: bool = False) -> LinkPoly:
    """[G](a, q): sum over sequences of
    (-1)^len (q/a)^(rot/2) q^(-w) E(a/q, -1, q)."""
    rot, agg = aggregate_sequences(G, flows, skip_multicomponent)
    by_exps: Dict[Tuple[int, ...], Dict[int, int]] = defaultdict(dict)
    for (exps, w4), c in agg.items():
        by_exps[exps][-_half(w4)] = c
    terms = []
    for exps, poly in by_exps.items():
        terms.append(_sym_piece(exps) * Laurent(poly))
    return linkpoly_sum(terms).shift(-rot, rot)


def antisymmetric_eval(G: MOYGraph, b: Optional[int] = 0, flows: Optional[List[ElementaryFlow]] = None,
                       a_power: Optional[int] = None) -> LinkPoly:
    """<G>(q, a, b): sum over sequences of
    (-1)^len (qa)^(-rot/2) q^w E(aq, -b-1, 1/q).

    With ``b=None`` the value is computed for enough integer b to detect any
    residual b-dependence, which raises :class:`BDependenceError`; otherwise
    the b = 0 value is returned.  ``a_power=N`` substitutes a = q^N.
    """
    rot, agg = aggregate_sequences(G, flows)
    by_exps: Dict[Tuple[int, ...], Dict[int, int]] = defaultdict(dict)
    for (exps, w4), c in agg.items():
        by_exps[exps][_half(w4)] = c
    if b is None:
        deg = max((max(Counter(e).values()) - 1 for e in by_exps), default=0)
        values = [_antisym_total(by_exps, rot, bb, a_power) for bb in range(deg + 1)]
        if any(v != values[0] for v in values[1:]):
            raise BDependenceError("b-dependence detected")
        return values[0]
    return _antisym_total(by_exps, rot, b, a_power)


def _antisym_total(by_exps, rot: int, b: int, a_power: Optional[int]) -> LinkPoly:
    if a_power is None:
        a_subst, pre = (2, 2), (-rot, -rot)
    else:
        a_subst, pre = (0, 2 * (a_power + 1)), (0, -rot * (a_power + 1))
    terms = [_antisym_piece(exps, b, a_subst) * Laurent(poly) for exps, poly in by_exps.items()]
    return linkpoly_sum(terms).shift(*pre)


def symmetric_eval_naive(G: MOYGraph) -> LinkPoly:
    """Reference implementation summing sequence by sequence."""
    flows = elementary_flows(G)
    terms = []
    for s in enumerate_sequences(G, flows=flows):
        E = ehrhart_from_exponents(s.suffix_rotations(flows))
        val = evaluate_ehrhart(E, (2, -2), -1)
        terms.append(val.shift(-s.rot_sum, s.rot_sum - _half(s.weight_x4), (-1) ** s.length))
    return linkpoly_sum(terms)


# ---------------------------------------------------------------------------
# brute-force MOY states
# ---------------------------------------------------------------------------


def moy_bruteforce(G: MOYGraph, N: int) -> Laurent:
    """<G>_N(q) by listing every labelling of edges by subsets of A_N.

    Labels are doubled to integers -(N-1), -(N-3), ..., N-1.  A vertex
    contributes q^((#{x<y} - #{x>y})/4) over pairs x in the left edge and y in
    the right edge; a state contributes q^(sum_l l * rot(curve of l)).
    """
    if N < 1:
        raise ValueError("N must be positive")
    labels = list(range(-(N - 1), N, 2))
    gamma = G.gamma
    nE = len(G.edges)
    if any(g > N for g in gamma):
        return ZERO
    cut = [i for i, e in enumerate(G.edges) if e.closure]
    order = [vi for vi, v in enumerate(G.vertices) if v.kind != "bend"]
    order.sort(key=lambda vi: (G.vertices[vi].pos[1], G.vertices[vi].pos[0]))
    acc: Dict[int, int] = defaultdict(int)
    rot_cache: Dict[Tuple[int, ...], int] = {}

    def rot_of(label: int, sets: List[frozenset]) -> int:
        supp = tuple(1 if label in s else 0 for s in sets)
        if not any(supp):
            return 0
        r = rot_cache.get(supp)
        if r is None:
            r = rot_cache[supp] = make_flow(G, supp).rot
        return r

    def finish(sets: List[frozenset]) -> None:
        w = 0
        for L, R in G.lr_pairs():
            for xl in sets[L]:
                for yr in sets[R]:
                    w += 1 if xl < yr else -1
        # q^(w/4) = x^(w/2); rotation part x^(sum 2l * rot) with doubled labels
        if w % 2:
            raise AssertionError("vertex weights are not half-integer powers of q")
        e = w // 2 + sum(l * rot_of(l, sets) for l in labels)
        acc[e] += 1

    def rec(k: int, sets: List[Optional[frozenset]], cutsets: Dict[int, frozenset]) -> None:
        if k == len(order):
            finish(sets)
            return
        v = G.vertices[order[k]]
        if v.kind == "split":
            (ein,) = v.inputs
            s = sets[ein]
            for left in itertools.combinations(sorted(s), gamma[v.left]):
                ls = frozenset(left)
                rs = s - ls
                ok = True
                for e, val in ((v.left, ls), (v.right, rs)):
                    if G.edges[e].closure and cutsets[e] != val:
                        ok = False
                if not ok:
                    continue
                old = (sets[v.left], sets[v.right])
                if not G.edges[v.left].closure:
                    sets[v.left] = ls
                if not G.edges[v.right].closure:
                    sets[v.right] = rs
                rec(k + 1, sets, cutsets)
                sets[v.left], sets[v.right] = old
        else:
            a, b = (sets[e] for e in v.inputs)
            if a & b:
                return
            u = a | b
            (eout,) = v.outputs
            if G.edges[eout].closure:
                if cutsets[eout] != u:
                    return
                rec(k + 1, sets, cutsets)
            else:
                old = sets[eout]
                sets[eout] = u
                rec(k + 1, sets, cutsets)
                sets[eout] = old

    choices = [[frozenset(c) for c in itertools.combinations(labels, gamma[e])] for e in cut]
    for combo in itertools.product(*choices):
        sets: List[Optional[frozenset]] = [None] * nE
        cutsets = {}
        for e, s in zip(cut, combo):
            sets[e] = s
            cutsets[e] = s
        rec(0, sets, cutsets)
    return Laurent(acc)


# ---------------------------------------------------------------------------
# link invariants
# ---------------------------------------------------------------------------


def max_resolutions() -> int:
    raw = os.environ.get(ENV_MAX_RESOLUTIONS)
    if raw is None or raw == "":
        return DEFAULT_MAX_RESOLUTIONS
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_MAX_RESOLUTIONS} must be an integer, got {raw!r}") from exc


def _check_size(b: BraidWord, r: int, limit: Optional[int]) -> None:
    if r < 1:
        raise ValueError("color must be at least 1")
    limit = max_resolutions() if limit is None else limit
    count = (r + 1) ** len(b.letters)
    if count > limit:
        raise ResolutionLimitError(
            f"(r+1)^c = {r + 1}^{len(b.letters)} = {count} resolutions exceeds the limit {limit}"
        )


GraphKey = Tuple[int, Tuple[Tuple[int, int], ...]]


def graph_key(b: BraidWord, i: Sequence[int], r: int) -> GraphKey:
    """Canonical key of D_i: gadgets (position, rung label) up to rotation.

    Smoothed crossings carry no vertices and are dropped; cyclic rotation of
    the word is a planar isotopy of the closure.
    """
    word = tuple((abs(k), r - ic) for k, ic in zip(b.letters, i) if ic != r)
    if word:
        word = min(word[s:] + word[:s] for s in range(len(word)))
    return b.strands, word


def key_graph(key: GraphKey, r: int, thick_side: str = "right") -> MOYGraph:
    n, word = key
    bw = BraidWord(n, tuple(k for k, _ in word))
    return resolve(bw, ResolutionIndex(tuple(r - m for _, m in word), r), r, thick_side)


def resolution_terms(b: BraidWord, r: int, sign: int) -> Dict[GraphKey, Laurent]:
    """Collect prod_c (-1)^(i_c) x^(sign * sigma_c * i_c) by graph key."""
    acc: Dict[GraphKey, Dict[int, int]] = defaultdict(lambda: defaultdict(int))
    sigmas = [1 if k > 0 else -1 for k in b.letters]
    for i in itertools.product(range(r + 1), repeat=len(b.letters)):
        e = sign * sum(s * ic for s, ic in zip(sigmas, i))
        acc[graph_key(b, i, r)][e] += (-1) ** sum(i)
    return {k: Laurent(v) for k, v in acc.items() if any(v.values())}


_SYM_CACHE: Dict[Tuple[GraphKey, int, str, bool], LinkPoly] = {}


def graph_value(key: GraphKey, r: int, thick_side: str = "right", skip_multicomponent: bool = False) -> LinkPoly:
    """[D] for a canonical graph key, memoized."""
    ck = (key, r, thick_side, skip_multicomponent)
    v = _SYM_CACHE.get(ck)
    if v is None:
        v = symmetric_eval(key_graph(key, r, thick_side), skip_multicomponent=skip_multicomponent)
        _SYM_CACHE[ck] = v
    return v


def _graph_value_task(args) -> Tuple[Tuple, LinkPoly]:
    key, r, thick_side, skip = args
    return key, graph_value(key, r, thick_side, skip)


def prefactor_sign(r: int, writhe: int, kind: str, convention: str) -> int:
    """Sign of the writhe prefactor.

    ``"calibrated"`` uses ((-1)^r)^writhe for both sums, which reproduces the
    2-braid closed formula and is invariant under stabilization.
    ``"verbatim"`` uses (-1)^writhe for the symmetric sum and +1 for the
    anti-symmetric one.
    """
    if convention == "calibrated":
        return -1 if (r * writhe) % 2 else 1
    if convention == "verbatim":
        if kind == "sym":
            return -1 if writhe % 2 else 1
        return 1
    raise ValueError(f"unknown sign convention {convention!r}")


@dataclass
class HomflyConfig:
    """Knobs for the link-level state sums."""

    thick_side: str = "right"
    sign_convention: str = "calibrated"
    max_resolutions: Optional[int] = None
    workers: int = 1
    skip_multicomponent: bool = False


def colored_homfly(b: BraidWord, r: int, config: Optional[HomflyConfig] = None,
                   values: Optional[Dict[GraphKey, LinkPoly]] = None) -> LinkPoly:
    """P_r of the closure of ``b`` from the symmetric state sum:

        (-a^(-r/2) q^(-r(r-1)/2))^(c+ - c-)
            * sum_i prod_c (-1)^(i_c) q^(-sigma_c i_c / 2) [D_i](a, q)
    """
    cfg = config or HomflyConfig()
    _check_size(b, r, cfg.max_resolutions)
    coeffs = resolution_terms(b, r, -1)
    keys = sorted(coeffs)
    vals: Dict[GraphKey, LinkPoly] = {}
    if cfg.workers > 1 and len(keys) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as ex:
            for key, v in ex.map(_graph_value_task, [(k, r, cfg.thick_side, cfg.skip_multicomponent) for k in keys]):
                vals[key] = v
                _SYM_CACHE[(key, r, cfg.thick_side, cfg.skip_multicomponent)] = v
    else:
        for k in keys:
            vals[k] = graph_value(k, r, cfg.thick_side, cfg.skip_multicomponent)
    if values is not None:
        values.update(vals)
    total = linkpoly_sum(vals[k] * coeffs[k] for k in keys)
    w = stats(b).writhe
    sign = prefactor_sign(r, w, "sym", cfg.sign_convention)
    return total.shift(-r * w, -r * (r - 1) * w, sign)


def antisym_homfly(b: BraidWord, r: int, config: Optional[HomflyConfig] = None,
                   check_b: bool = True, a_power: Optional[int] = None) -> LinkPoly:
    """P_{r^t} from the anti-symmetric state sum:

        (a^(-r/2) q^(r(r-1)/2))^(c+ - c-)
            * sum_i prod_c (-1)^(i_c) q^(sigma_c i_c / 2) <D_i>(q, a, b)

    With ``check_b`` the total is evaluated at enough values of b to detect
    any residual b-dependence (raising :class:`BDependenceError`).
    ``a_power=N`` substitutes a = q^N throughout.
    """
    cfg = config or HomflyConfig()
    _check_size(b, r, cfg.max_resolutions)
    coeffs = resolution_terms(b, r, +1)
    data = {}
    deg = 0
    for key in coeffs:
        rot, agg = aggregate_sequences(key_graph(key, r, cfg.thick_side))
        by_exps: Dict[Tuple[int, ...], Dict[int, int]] = defaultdict(dict)
        for (exps, w4), c in agg.items():
            by_exps[exps][_half(w4)] = c
        data[key] = (rot, by_exps)
        deg = max([deg] + [max(Counter(e).values()) - 1 for e in by_exps])
    w = stats(b).writhe
    sign = prefactor_sign(r, w, "anti", cfg.sign_convention)

    def total_at(bb: int) -> LinkPoly:
        t = linkpoly_sum(_antisym_total(data[k][1], data[k][0], bb, a_power) * coeffs[k] for k in coeffs)
        if a_power is None:
            return t.shift(-r * w, r * (r - 1) * w, sign)
        return t.shift(0, (-r * a_power + r * (r - 1)) * w, sign)

    value = total_at(0)
    if check_b:
        for bb in range(1, deg + 1):
            if total_at(bb) != value:
                raise BDependenceError("b-dependence detected")
    return value


def moy_homfly_N(b: BraidWord, r: int, N: int, thick_side: str = "right",
                 sign_convention: str = "calibrated") -> Laurent:
    """The original MOY sum for P_{r^t}(q^N, q) using brute-force states:

        (q^(-rN/2) q^(r(r-1)/2))^(c+ - c-)
            * sum_i prod_c (-1)^(i_c) q^(sigma_c i_c / 2) <D_i>_N(q)
    """
    _check_size(b, r, None)
    coeffs = resolution_terms(b, r, +1)
    total = ZERO
    for key, c in coeffs.items():
        total = total + moy_bruteforce(key_graph(key, r, thick_side), N) * c
    w = stats(b).writhe
    sign = prefactor_sign(r, w, "anti", sign_convention)
    return total.shift((-r * N + r * (r - 1)) * w) * sign


def clear_caches() -> None:
    _SYM_CACHE.clear()
    _sym_piece.cache_clear()
    _antisym_piece.cache_clear()
    chain_ehrhart.cache_clear()
