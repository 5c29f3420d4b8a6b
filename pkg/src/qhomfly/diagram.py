"""Braid words, their resolved MOY graphs, elementary flows and the flow
statistics (rotation numbers and intersection pairings).

Embedding conventions
---------------------
Strand positions are x = 1..n and the braid is read bottom to top, letter j
occupying the band 8j <= y <= 8j + 8.  Closure arcs leave the top at
(p, Y), run left above the braid, down at x = -p, and back right under the
braid to (p, 0).  Every strand circle of the closure is therefore
counter-clockwise (rotation +1), and the arcs are nested.

A letter +-k with exchange parameter i (0 <= i <= r) becomes, when i < r, a
four-vertex gadget between positions k and k + 1::

        TL(k, 8j+6) <-- rung m -- TR(k+1, 8j+5)
            ^                          ^
         i  |                          | 2r - i
            |                          |
        BL(k, 8j+2) -- rung m --> BR(k+1, 8j+3)

with rung label m = r - i.  When i = r the rungs vanish and the strands pass
straight through (the oriented smoothing); when i = 0 the left side vanishes
and the gadget collapses to a single thick edge of label 2r.
``thick_side="left"`` builds the mirror image of this picture.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

Point = Tuple[int, int]


class BraidParseError(ValueError):
    """Raised for malformed braid text; ``position`` is the token index."""

    def __init__(self, message: str, position: Optional[int] = None, text: str = ""):
        self.position = position
        self.text = text
        where = f" at token {position}" if position is not None else ""
        super().__init__(f"{message}{where} in {text!r}")


# ---------------------------------------------------------------------------
# braid words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BraidWord:
    """Word in the braid group B_n; letter +k is sigma_k, -k its inverse."""

    strands: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(k) for k in self.letters))
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for k in self.letters:
            if k == 0 or abs(k) >= self.strands:
                raise ValueError(f"generator {k} is invalid on {self.strands} strands")

    def __len__(self) -> int:
        return len(self.letters)

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-k for k in self.letters))

    def rotate(self, s: int) -> "BraidWord":
        """Cyclic rotation (a conjugate with the same closure)."""
        if not self.letters:
            return self
        s %= len(self.letters)
        return BraidWord(self.strands, self.letters[s:] + self.letters[:s])

    def shift(self, d: int, strands: Optional[int] = None) -> "BraidWord":
        """Relabel generators k -> k + d."""
        n = self.strands + d if strands is None else strands
        return BraidWord(n, tuple(k + d if k > 0 else k - d for k in self.letters))

    def is_positive(self) -> bool:
        return all(k > 0 for k in self.letters)

    def permutation(self) -> Tuple[int, ...]:
        """Image of each bottom position at the top (0-based)."""
        perm = list(range(self.strands))
        where = list(range(self.strands))  # where[p] = strand index at position p
        for k in self.letters:
            a = abs(k) - 1
            where[a], where[a + 1] = where[a + 1], where[a]
        for pos, s in enumerate(where):
            perm[s] = pos
        return tuple(perm)

    def components(self) -> int:
        """Number of link components of the closure."""
        perm = self.permutation()
        seen, count = set(), 0
        for s in range(self.strands):
            if s not in seen:
                count += 1
                while s not in seen:
                    seen.add(s)
                    s = perm[s]
        return count

    def __str__(self) -> str:
        return " ".join(str(k) for k in self.letters) or "(empty)"


_STRANDS_PREFIX = re.compile(r"^\s*(?:[Bb])?(\d+)\s*:\s*")


def parse_braid(text: str, strands: Optional[int] = None) -> BraidWord:
    """Parse a braid word.

    Accepted forms: whitespace or comma separated signed integers
    (``"1 -2 1 -2"``) or letters where ``a`` is sigma_1, ``A`` its inverse,
    ``b`` sigma_2 and so on (``"aBaB"``).  A prefix ``"3:"`` or ``"B3:"`` sets
    the strand count; otherwise it is one more than the largest generator.
    """
    body = text
    m = _STRANDS_PREFIX.match(text)
    if m:
        if strands is None:
            strands = int(m.group(1))
        body = text[m.end():]
    tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
    letters: List[int] = []
    pos = 0
    kinds = {"int" if re.fullmatch(r"[+-]?\d+", t) else "alpha" for t in tokens}
    if kinds == {"int", "alpha"}:
        raise BraidParseError("cannot mix integer and letter generators", None, text)
    for tok in tokens:
        if re.fullmatch(r"[+-]?\d+", tok):
            k = int(tok)
            if k == 0:
                raise BraidParseError("generator index 0 is invalid", pos, text)
            letters.append(k)
            pos += 1
        elif re.fullmatch(r"[A-Za-z]+", tok):
            for ch in tok:
                k = ord(ch.lower()) - ord("a") + 1
                letters.append(k if ch.islower() else -k)
                pos += 1
        else:
            raise BraidParseError(f"cannot parse token {tok!r}", pos, text)
    n = 1 + max((abs(k) for k in letters), default=0)
    if strands is not None:
        if strands < 1:
            raise BraidParseError("strand count must be positive", None, text)
        for i, k in enumerate(letters):
            if abs(k) >= strands:
                raise BraidParseError(f"generator {k} needs more than {strands} strands", i, text)
        n = strands
    return BraidWord(n, tuple(letters))


@dataclass(frozen=True)
class DiagramStats:
    c_plus: int
    c_minus: int
    s_plus: int
    s_minus: int

    @property
    def writhe(self) -> int:
        return self.c_plus - self.c_minus

    @property
    def crossings(self) -> int:
        return self.c_plus + self.c_minus

    @property
    def seifert_circles(self) -> int:
        return self.s_plus + self.s_minus


def stats(b: BraidWord) -> DiagramStats:
    """Crossing and Seifert-circle counts of the closure diagram."""
    cp = sum(1 for k in b.letters if k > 0)
    return DiagramStats(cp, len(b.letters) - cp, b.strands, 0)


# ---------------------------------------------------------------------------
# MOY graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    gamma: int
    points: Tuple[Point, ...]
    closure: bool = False


@dataclass(frozen=True)
class Vertex:
    """A graph node.  Trivalent nodes are ``split`` (one in, two out) or
    ``merge`` (two in, one out) and carry their left and right edges;
    ``bend`` nodes only anchor otherwise vertex-free circles."""

    kind: str
    pos: Point
    inputs: Tuple[int, ...]
    outputs: Tuple[int, ...]
    left: Optional[int] = None
    right: Optional[int] = None


@dataclass(frozen=True)
class MOYGraph:
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]
    strands: int = 0

    @property
    def gamma(self) -> Tuple[int, ...]:
        return tuple(e.gamma for e in self.edges)

    def trivalent(self) -> List[int]:
        return [i for i, v in enumerate(self.vertices) if v.kind != "bend"]

    def lr_pairs(self) -> List[Tuple[int, int]]:
        """``(left_edge, right_edge)`` for every trivalent vertex."""
        return [(v.left, v.right) for v in self.vertices if v.kind != "bend"]

    def check(self) -> None:
        """Validate conservation, degree and left/right data."""
        for vi, v in enumerate(self.vertices):
            tin = sum(self.edges[e].gamma for e in v.inputs)
            tout = sum(self.edges[e].gamma for e in v.outputs)
            if tin != tout:
                raise AssertionError(f"flow not conserved at vertex {vi}")
            for e in v.inputs:
                assert self.edges[e].dst == vi
            for e in v.outputs:
                assert self.edges[e].src == vi
            if v.kind == "split":
                assert len(v.inputs) == 1 and len(v.outputs) == 2
                assert {v.left, v.right} == set(v.outputs)
            elif v.kind == "merge":
                assert len(v.inputs) == 2 and len(v.outputs) == 1
                assert {v.left, v.right} == set(v.inputs)
        for e in self.edges:
            if e.gamma <= 0:
                raise AssertionError("edges must carry positive flow")

    def to_json(self) -> dict:
        return {
            "nodes": [
                {"kind": v.kind, "pos": list(v.pos), "left": v.left, "right": v.right}
                for v in self.vertices
            ],
            "edges": [
                {"from": e.src, "to": e.dst, "gamma": e.gamma, "closure": e.closure}
                for e in self.edges
            ],
            "embedding": [[list(p) for p in e.points] for e in self.edges],
        }


@dataclass(frozen=True)
class ResolutionIndex:
    """Exchange parameters i_c in {0..r}, one per crossing position."""

    i: Tuple[int, ...]
    r: int

    def __post_init__(self):
        object.__setattr__(self, "i", tuple(int(v) for v in self.i))
        if any(not 0 <= v <= self.r for v in self.i):
            raise ValueError("exchange parameters must lie in 0..r")

    @classmethod
    def seifert(cls, b: BraidWord, r: int) -> "ResolutionIndex":
        """The index whose graph is the oriented (Seifert) smoothing."""
        return cls(tuple([r] * len(b.letters)), r)


def resolve(b: BraidWord, idx: ResolutionIndex, r: Optional[int] = None,
            thick_side: str = "right") -> MOYGraph:
    """Build the MOY graph D_i of the closure of ``b``."""
    if r is None:
        r = idx.r
    if r < 1:
        raise ValueError("color must be at least 1")
    if len(idx.i) != len(b.letters):
        raise ValueError("one exchange parameter per crossing is required")
    if thick_side not in ("left", "right"):
        raise ValueError("thick_side must be 'left' or 'right'")
    builder = _Builder(b.strands, r)
    for j, (k, i_c) in enumerate(zip(b.letters, idx.i)):
        if i_c == r:
            continue
        builder.gadget(abs(k), j, i_c, thick_side)
    return builder.finish(max(len(b.letters), 1) * 8)


class _Builder:
    def __init__(self, n: int, r: int):
        self.n = n
        self.r = r
        self.nodes: List[Point] = []
        self.edges: List[List] = []  # [src, dst, gamma, points]
        # open edge per track: (src node or None for bottom, points)
        self.open: Dict[int, Tuple[Optional[int], List[Point]]] = {p: (None, [(p, 0)]) for p in range(1, n + 1)}
        self.first: Dict[int, Tuple[int, List[Point]]] = {}

    def node(self, pt: Point) -> int:
        self.nodes.append(pt)
        return len(self.nodes) - 1

    def edge(self, src: Optional[int], dst: int, gamma: int, pts: List[Point]) -> None:
        if gamma > 0:
            self.edges.append([src, dst, gamma, list(pts)])

    def end_track(self, p: int, dst: int) -> None:
        src, pts = self.open[p]
        pts = pts + [self.nodes[dst]]
        if src is None:
            self.first[p] = (dst, pts)
        else:
            self.edge(src, dst, self.r, pts)

    def gadget(self, k: int, j: int, i_c: int, thick_side: str) -> None:
        r, m = self.r, self.r - i_c
        y = 8 * j
        if thick_side == "right":
            bl, br = self.node((k, y + 2)), self.node((k + 1, y + 3))
            tr, tl = self.node((k + 1, y + 5)), self.node((k, y + 6))
            self.end_track(k, bl)
            self.end_track(k + 1, br)
            self.edge(bl, tl, i_c, [self.nodes[bl], self.nodes[tl]])
            self.edge(bl, br, m, [self.nodes[bl], self.nodes[br]])
            self.edge(br, tr, 2 * r - i_c, [self.nodes[br], self.nodes[tr]])
            self.edge(tr, tl, m, [self.nodes[tr], self.nodes[tl]])
        else:
            br, bl = self.node((k + 1, y + 2)), self.node((k, y + 3))
            tl, tr = self.node((k, y + 5)), self.node((k + 1, y + 6))
            self.end_track(k + 1, br)
            self.end_track(k, bl)
            self.edge(br, tr, i_c, [self.nodes[br], self.nodes[tr]])
            self.edge(br, bl, m, [self.nodes[br], self.nodes[bl]])
            self.edge(bl, tl, 2 * r - i_c, [self.nodes[bl], self.nodes[tl]])
            self.edge(tl, tr, m, [self.nodes[tl], self.nodes[tr]])
        self.open[k] = (tl, [self.nodes[tl]])
        self.open[k + 1] = (tr, [self.nodes[tr]])

    def finish(self, ytop: int) -> MOYGraph:
        closure_ids = set()
        for p in range(1, self.n + 1):
            src, pts = self.open[p]
            arc = [(p, ytop), (p, ytop + p), (-p, ytop + p), (-p, -p), (p, -p), (p, 0)]
            if src is None:
                bend = self.node((p, 0))
                loop = [(p, 0)] + arc
                closure_ids.add(len(self.edges))
                self.edge(bend, bend, self.r, loop)
                continue
            dst, first_pts = self.first[p]
            closure_ids.add(len(self.edges))
            self.edge(src, dst, self.r, pts + arc + first_pts[1:])
        return _compress(self.nodes, self.edges, closure_ids, self.n)


def _dedupe(pts: List[Point]) -> List[Point]:
    out: List[Point] = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    return out


def _compress(nodes: List[Point], raw_edges: List[List], closure_ids: set, n: int) -> MOYGraph:
    edges = {i: [e[0], e[1], e[2], _dedupe(e[3]), i in closure_ids] for i, e in enumerate(raw_edges)}
    ins: Dict[int, List[int]] = {v: [] for v in range(len(nodes))}
    outs: Dict[int, List[int]] = {v: [] for v in range(len(nodes))}
    for i, (s, d, _, _, _) in edges.items():
        outs[s].append(i)
        ins[d].append(i)
    alive = set(range(len(nodes)))
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if len(ins[v]) == 1 and len(outs[v]) == 1:
                a, b = ins[v][0], outs[v][0]
                if a == b:
                    continue  # a loop anchored at v: keep v as a bend
                ea, eb = edges[a], edges[b]
                assert ea[2] == eb[2]
                ea[1] = eb[1]
                ea[3] = _dedupe(ea[3] + eb[3][1:])
                ea[4] = ea[4] or eb[4]
                ins[eb[1]] = [a if x == b else x for x in ins[eb[1]]]
                del edges[b]
                ins[v], outs[v] = [], []
                alive.discard(v)
                changed = True
            elif not ins[v] and not outs[v]:
                alive.discard(v)
    order = sorted(alive, key=lambda v: (nodes[v][1], nodes[v][0]))
    vmap = {v: i for i, v in enumerate(order)}
    eorder = sorted(edges, key=lambda i: (nodes[edges[i][0]][1], nodes[edges[i][0]][0], edges[i][3][1] if len(edges[i][3]) > 1 else (0, 0)))
    emap = {e: i for i, e in enumerate(eorder)}
    new_edges = tuple(
        Edge(vmap[edges[e][0]], vmap[edges[e][1]], edges[e][2], tuple(edges[e][3]), edges[e][4]) for e in eorder
    )
    verts = []
    for v in order:
        vin = tuple(emap[e] for e in ins[v])
        vout = tuple(emap[e] for e in outs[v])
        if len(vin) == 1 and len(vout) == 2:
            kind = "split"
            pair = vout
            xs = {e: new_edges[e].points[1][0] for e in pair}
        elif len(vin) == 2 and len(vout) == 1:
            kind = "merge"
            pair = vin
            xs = {e: new_edges[e].points[-2][0] for e in pair}
        else:
            verts.append(Vertex("bend", nodes[v], vin, vout))
            continue
        left, right = sorted(pair, key=lambda e: xs[e])
        if xs[left] == xs[right]:
            raise AssertionError("left/right edges are not separated in the embedding")
        verts.append(Vertex(kind, nodes[v], vin, vout, left, right))
    g = MOYGraph(tuple(verts), new_edges, n)
    g.check()
    return g


# ---------------------------------------------------------------------------
# elementary flows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ElementaryFlow:
    """{0,1} circulation; ``components`` are edge cycles in traversal order."""

    support: Tuple[int, ...]
    components: Tuple[Tuple[int, ...], ...]
    rotations: Tuple[int, ...]

    @property
    def rot(self) -> int:
        return sum(self.rotations)

    @property
    def size(self) -> int:
        return len(self.components)


def _turning(points: Sequence[Point]) -> float:
    pts = list(points)
    if pts[0] == pts[-1]:
        pts = pts[:-1]
    total = 0.0
    n = len(pts)
    for i in range(n):
        p0, p1, p2 = pts[i - 1], pts[i], pts[(i + 1) % n]
        a1 = math.atan2(p1[1] - p0[1], p1[0] - p0[0])
        a2 = math.atan2(p2[1] - p1[1], p2[0] - p1[0])
        d = a2 - a1
        while d <= -math.pi:
            d += 2 * math.pi
        while d > math.pi:
            d -= 2 * math.pi
        total += d
    return total


def rotation_number(G: MOYGraph, cycle: Sequence[int]) -> int:
    """Rotation number (+1 counter-clockwise, -1 clockwise) of an edge cycle."""
    pts: List[Point] = []
    for k, e in enumerate(cycle):
        edge = G.edges[e]
        nxt = G.edges[cycle[(k + 1) % len(cycle)]]
        if edge.dst != nxt.src:
            raise AssertionError("edge sequence is not a closed traversal")
        pts.extend(edge.points if not pts else edge.points[1:])
    pts = _dedupe(pts)
    turns = _turning(pts) / (2 * math.pi)
    rot = round(turns)
    if abs(turns - rot) > 1e-9 or rot not in (1, -1):
        raise AssertionError(f"embedded cycle has turning number {turns}")
    return rot


def _components(G: MOYGraph, support: Sequence[int]) -> List[Tuple[int, ...]]:
    used = set()
    out = []
    for start, val in enumerate(support):
        if not val or start in used:
            continue
        cyc = []
        e = start
        while e not in used:
            used.add(e)
            cyc.append(e)
            v = G.vertices[G.edges[e].dst]
            nxt = [o for o in v.outputs if support[o]]
            if len(nxt) != 1:
                raise AssertionError("support is not a disjoint union of cycles")
            e = nxt[0]
        if e != start:
            raise AssertionError("support is not a disjoint union of cycles")
        out.append(tuple(cyc))
    return out


def make_flow(G: MOYGraph, support: Sequence[int]) -> ElementaryFlow:
    support = tuple(int(s) for s in support)
    comps = _components(G, support)
    return ElementaryFlow(support, tuple(comps), tuple(rotation_number(G, c) for c in comps))


def elementary_flows(G: MOYGraph) -> List[ElementaryFlow]:
    """All nonzero {0,1} circulations, ordered lexicographically by support."""
    nE = len(G.edges)
    cut = [i for i, e in enumerate(G.edges) if e.closure]
    trivalent = [vi for vi, v in enumerate(G.vertices) if v.kind != "bend"]
    trivalent.sort(key=lambda vi: (G.vertices[vi].pos[1], G.vertices[vi].pos[0]))
    found = []

    def propagate(vals: List[int], k: int, cutvals: Dict[int, int]) -> None:
        if k == len(trivalent):
            if any(vals):
                found.append(tuple(vals))
            return
        v = G.vertices[trivalent[k]]
        if v.kind == "split":
            (ein,) = v.inputs
            inval = vals[ein]
            options = [(0, 0)] if inval == 0 else [(1, 0), (0, 1)]
            for lv, rv in options:
                ok = True
                new = []
                for e, val in ((v.left, lv), (v.right, rv)):
                    if G.edges[e].closure:
                        if cutvals[e] != val:
                            ok = False
                    else:
                        new.append((e, val))
                if not ok:
                    continue
                for e, val in new:
                    vals[e] = val
                propagate(vals, k + 1, cutvals)
                for e, _ in new:
                    vals[e] = 0
        else:
            total = sum(vals[e] for e in v.inputs)
            if total > 1:
                return
            (eout,) = v.outputs
            if G.edges[eout].closure:
                if cutvals[eout] != total:
                    return
                propagate(vals, k + 1, cutvals)
            else:
                vals[eout] = total
                propagate(vals, k + 1, cutvals)
                vals[eout] = 0

    for bits in range(1 << len(cut)):
        vals = [0] * nE
        cutvals = {}
        for j, e in enumerate(cut):
            b = (bits >> j) & 1
            vals[e] = b
            cutvals[e] = b
        propagate(vals, 0, cutvals)
    found = sorted(set(found))
    return [make_flow(G, s) for s in found]


def intersection_number_x4(G: MOYGraph, d: Sequence[int], e: Sequence[int]) -> int:
    """4 <d, e> = sum over trivalent vertices of d(L) e(R) - e(L) d(R).

    Bilinear in the two edge vectors, so it also applies to sums of flows.
    """
    total = 0
    for L, R in G.lr_pairs():
        total += d[L] * e[R] - e[L] * d[R]
    return total


def intersection_number(G: MOYGraph, d, e):
    """The pairing <d, e> as an exact quarter-integer."""
    from fractions import Fraction

    dv = d.support if isinstance(d, ElementaryFlow) else d
    ev = e.support if isinstance(e, ElementaryFlow) else e
    return Fraction(intersection_number_x4(G, dv, ev), 4)
