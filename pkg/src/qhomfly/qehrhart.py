"""q-weighted Ehrhart theory for lattice simplices and order polytopes.

For a lattice polytope Q and an integral linear form lambda the weighted count
W(N) = sum over lattice points y of NQ of q^lambda(y) has the generating
series

    sum_N W(N) z^N = Num(z) / prod_j (1 - q^(e_j) z)^(m_j),

where the e_j are the distinct values of lambda on the vertices and m_j their
multiplicities.  Splitting into partial fractions over Q(q) gives

    W(N) = sum_j sum_{i <= m_j} C_ij(q) * binom(N + i - 1, i - 1) * q^(e_j N),

and replacing q^N by a and N by b turns this into the three-variable object
E(a, b, q) stored by :class:`EhrhartPoly`.

All q-dependence is held in ``RatFuncX`` values over x = q^(1/2), so q^k is
the x-exponent 2k.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import (
    ONE,
    ZERO,
    Laurent,
    LinkPoly,
    RatFuncX,
    linkpoly_sum,
    maxdeg,
    ratfunc_sum,
)

Vector = Tuple[int, ...]


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearForm:
    """Integral linear form given by its coefficient vector."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __call__(self, v: Sequence[int]) -> int:
        if len(v) != len(self.coeffs):
            raise ValueError("linear form and point have different dimensions")
        return sum(c * x for c, x in zip(self.coeffs, v))

    @property
    def dim(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class LatticeSimplex:
    """Simplex spanned by affinely independent integer vertices."""

    vertices: Tuple[Vector, ...]

    def __post_init__(self):
        verts = tuple(tuple(int(c) for c in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise ValueError("a simplex needs at least one vertex")
        m = len(verts[0])
        if any(len(v) != m for v in verts):
            raise ValueError("vertices have different dimensions")
        diffs = [[Fraction(a - b) for a, b in zip(v, verts[0])] for v in verts[1:]]
        if _rank(diffs) != len(diffs):
            raise ValueError("vertices are not affinely independent")

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class Poset:
    """Finite poset given by an element list and cover pairs (lower, upper)."""

    elements: Tuple[str, ...]
    covers: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self):
        els = tuple(str(e) for e in self.elements)
        cov = tuple((str(a), str(b)) for a, b in self.covers)
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "covers", cov)
        if len(set(els)) != len(els):
            raise ValueError("duplicate poset elements")
        if len(set(cov)) != len(cov):
            raise ValueError("duplicate cover relations")
        known = set(els)
        for a, b in cov:
            if a not in known or b not in known:
                raise ValueError(f"cover ({a}, {b}) mentions an unknown element")
            if a == b:
                raise ValueError("a cover relation must join distinct elements")
        if self._topological_order() is None:
            raise ValueError("cover relation has a cycle")

    @property
    def size(self) -> int:
        return len(self.elements)

    def index(self, e: str) -> int:
        return self.elements.index(e)

    def cover_indices(self) -> List[Tuple[int, int]]:
        pos = {e: i for i, e in enumerate(self.elements)}
        return [(pos[a], pos[b]) for a, b in self.covers]

    def _topological_order(self) -> Optional[List[int]]:
        n = len(self.elements)
        pos = {e: i for i, e in enumerate(self.elements)}
        indeg = [0] * n
        succ: List[List[int]] = [[] for _ in range(n)]
        for a, b in self.covers:
            succ[pos[a]].append(pos[b])
            indeg[pos[b]] += 1
        ready = sorted(i for i in range(n) if indeg[i] == 0)
        out = []
        while ready:
            i = ready.pop(0)
            out.append(i)
            for j in succ[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
            ready.sort()
        return out if len(out) == n else None

    def natural_labeling(self) -> List[int]:
        """``label[i]`` for element index i, increasing along the order."""
        order = self._topological_order()
        label = [0] * len(self.elements)
        for rank, i in enumerate(order):
            label[i] = rank
        return label

    def linear_extensions(self) -> Iterator[Tuple[int, ...]]:
        """All linear extensions as tuples of element indices, smallest first."""
        n = len(self.elements)
        preds = [set() for _ in range(n)]
        for a, b in self.cover_indices():
            preds[b].add(a)

        def rec(prefix: List[int], placed: set):
            if len(prefix) == n:
                yield tuple(prefix)
                return
            for i in range(n):
                if i not in placed and preds[i] <= placed:
                    prefix.append(i)
                    placed.add(i)
                    yield from rec(prefix, placed)
                    placed.discard(i)
                    prefix.pop()

        yield from rec([], set())

    @classmethod
    def chain(cls, k: int) -> "Poset":
        els = tuple(f"v{i + 1}" for i in range(k))
        return cls(els, tuple((els[i], els[i + 1]) for i in range(k - 1)))

    @classmethod
    def antichain(cls, k: int) -> "Poset":
        return cls(tuple(f"v{i + 1}" for i in range(k)), ())


def load_poset(data: Union[str, Mapping]) -> Tuple[Poset, LinearForm]:
    """Read ``{elements, covers, form}`` (JSON text or mapping)."""
    if isinstance(data, str):
        data = json.loads(data)
    poset = Poset(tuple(data["elements"]), tuple(tuple(c) for c in data.get("covers", [])))
    form = data.get("form", {})
    unknown = set(form) - set(poset.elements)
    if unknown:
        raise ValueError(f"form mentions unknown elements: {sorted(unknown)}")
    return poset, LinearForm(tuple(int(form.get(e, 0)) for e in poset.elements))


Polytope = Union[LatticeSimplex, Poset]


def polytope_dim(Q: Polytope) -> int:
    return Q.size if isinstance(Q, Poset) else Q.dim


# ---------------------------------------------------------------------------
# exact linear algebra (small systems)
# ---------------------------------------------------------------------------


def _rank(rows: List[List[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _solve(columns: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[List[Fraction]]:
    """Solve ``sum_i mu_i columns[i] = target`` exactly (columns independent)."""
    nvar = len(columns)
    rows = [[Fraction(columns[i][r]) for i in range(nvar)] + [Fraction(target[r])]
            for r in range(len(target))]
    piv_cols = []
    rank = 0
    for col in range(nvar):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        rows[rank] = [a / p for a in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        piv_cols.append(col)
        rank += 1
    for r in range(rank, len(rows)):
        if rows[r][-1] != 0:
            return None
    mu = [Fraction(0)] * nvar
    for r, col in enumerate(piv_cols):
        mu[col] = rows[r][-1]
    return mu


# ---------------------------------------------------------------------------
# brute-force weighted lattice point counts
# ---------------------------------------------------------------------------


def _q_power(k: int) -> Laurent:
    return Laurent.monomial(2 * k)


def weighted_count(Q: Polytope, lam: LinearForm, N: int, interior: bool = False) -> Laurent:
    """Sum of q^lambda(y) over lattice points y of NQ (or its relative interior).

    This is a direct enumeration and serves as the reference for everything
    else in the module.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    acc: Dict[int, int] = {}
    for y in lattice_points(Q, N, interior):
        e = 2 * lam(y)
        acc[e] = acc.get(e, 0) + 1
    return Laurent(acc)


def lattice_points(Q: Polytope, N: int, interior: bool = False) -> Iterator[Vector]:
    if isinstance(Q, Poset):
        n = Q.size
        covers = Q.cover_indices()
        lo, hi = (1, N - 1) if interior else (0, N)
        if hi < lo:
            return
        for v in itertools.product(range(lo, hi + 1), repeat=n):
            if interior:
                if all(v[a] < v[b] for a, b in covers):
                    yield v
            elif all(v[a] <= v[b] for a, b in covers):
                yield v
        return
    verts = Q.vertices
    m = Q.ambient_dim
    if N == 0:
        if not interior or Q.dim == 0:
            yield tuple([0] * m)
        return
    boxes = [range(min(v[c] for v in verts) * N, max(v[c] for v in verts) * N + 1) for c in range(m)]
    cols = [tuple(v) + (1,) for v in verts]
    for y in itertools.product(*boxes):
        mu = _solve(cols, tuple(y) + (N,))
        if mu is None:
            continue
        if interior:
            if all(t > 0 for t in mu):
                yield y
        elif all(t >= 0 for t in mu):
            yield y


# ---------------------------------------------------------------------------
# EhrhartPoly
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EhrhartPoly:
    """E(a, b, q) = sum_j sum_i C_ij(q) binom(b + i - 1, i - 1) a^(e_j).

    ``terms`` is a tuple of ``(e_j, ((i, C_ij), ...))`` sorted by ``e_j`` and
    ``i``; every stored ``C_ij`` is nonzero.
    """

    terms: Tuple[Tuple[int, Tuple[Tuple[int, RatFuncX], ...]], ...] = ()

    @classmethod
    def from_dict(cls, data: Mapping[Tuple[int, int], RatFuncX]) -> "EhrhartPoly":
        grouped: Dict[int, List[Tuple[int, RatFuncX]]] = {}
        for (e, i), c in data.items():
            if c:
                grouped.setdefault(e, []).append((i, c))
        return cls(tuple((e, tuple(sorted(v, key=lambda t: t[0]))) for e, v in sorted(grouped.items())))

    def as_dict(self) -> Dict[Tuple[int, int], RatFuncX]:
        return {(e, i): c for e, part in self.terms for i, c in part}

    def __add__(self, other: "EhrhartPoly") -> "EhrhartPoly":
        acc: Dict[Tuple[int, int], List[RatFuncX]] = {}
        for src in (self, other):
            for k, c in src.as_dict().items():
                acc.setdefault(k, []).append(c)
        return EhrhartPoly.from_dict({k: ratfunc_sum(v) for k, v in acc.items()})

    @property
    def a_exponents(self) -> Tuple[int, ...]:
        return tuple(e for e, _ in self.terms)

    def max_i(self) -> int:
        return max((i for _, part in self.terms for i, _ in part), default=0)

    def depends_on_b(self) -> bool:
        return self.max_i() >= 2

    def b_coefficients(self) -> Dict[int, LinkPoly]:
        """Coefficients of b^k in the monomial basis, as polynomials in a.

        The a-dependence is returned through alpha = a^(1/2), so a^e has
        alpha-exponent 2e.
        """
        out: Dict[int, List[LinkPoly]] = {}
        for e, part in self.terms:
            for i, c in part:
                for k, coef in enumerate(_binom_poly(i - 1)):
                    if coef:
                        out.setdefault(k, []).append(LinkPoly.from_ratfunc(c * coef, 2 * e))
        res = {k: linkpoly_sum(v) for k, v in out.items()}
        return {k: v for k, v in res.items() if v}


def _binom_poly(k: int) -> List[Fraction]:
    """Coefficients (in b) of binom(b + k, k) = prod_{s=1..k} (b + s)/s."""
    poly = [Fraction(1)]
    for s in range(1, k + 1):
        nxt = [Fraction(0)] * (len(poly) + 1)
        for d, c in enumerate(poly):
            nxt[d] += c * s
            nxt[d + 1] += c
        poly = [c / s for c in nxt]
    return poly


def binom_at(b: int, i: int) -> Fraction:
    """binom(b + i - 1, i - 1) for any integer b (polynomial continuation)."""
    out = Fraction(1)
    for s in range(1, i):
        out = out * (b + s) / s
    return out


# ---------------------------------------------------------------------------
# partial fractions
# ---------------------------------------------------------------------------

GenNumerator = Dict[int, Laurent]  # z-power -> Laurent in x


def _one_minus_q(d: int) -> Laurent:
    return ONE - _q_power(d)


def partial_fractions(numer: Mapping[int, Laurent], denom: Mapping[int, int]) -> EhrhartPoly:
    """Decompose ``numer(z) / prod (1 - q^e z)^m`` into the binomial basis.

    ``denom`` maps each exponent e to its multiplicity m.  The numerator must
    have z-degree below the total multiplicity (no polynomial part).
    """
    total_m = sum(denom.values())
    numer = {k: v for k, v in numer.items() if v}
    if numer and max(numer) >= total_m:
        raise ValueError("generating function has a polynomial part")
    result: Dict[Tuple[int, int], RatFuncX] = {}
    for e, m in denom.items():
        # H(t) with z = q^(-e) (1 - t), truncated to t^(m-1)
        h = [RatFuncX(ZERO) for _ in range(m)]
        for k, nk in numer.items():
            scaled = nk * _q_power(-e * k)
            for s in range(min(k, m - 1) + 1):
                coef = comb(k, s) * (-1) ** s
                h[s] = h[s] + RatFuncX(scaled * coef)
        for l_exp, ml in denom.items():
            if l_exp == e:
                continue
            d = l_exp - e
            base = RatFuncX(ONE, _one_minus_q(d) ** ml)
            u = RatFuncX(_q_power(d), _one_minus_q(d))
            factor = []
            upow = RatFuncX(ONE)
            for s in range(m):
                # binom(-ml, s) = (-1)^s binom(ml + s - 1, s)
                factor.append(base * upow * ((-1) ** s * comb(ml + s - 1, s)))
                upow = upow * u
            h = _series_mul(h, factor, m)
        for i in range(1, m + 1):
            c = h[m - i]
            if c:
                result[(e, i)] = c
    return EhrhartPoly.from_dict(result)


def _series_mul(a: List[RatFuncX], b: List[RatFuncX], n: int) -> List[RatFuncX]:
    out = []
    for k in range(n):
        out.append(ratfunc_sum(a[i] * b[k - i] for i in range(k + 1) if a[i] and b[k - i]))
    return out


def ehrhart_from_exponents(exps: Iterable[int]) -> EhrhartPoly:
    """E for the generating function ``prod_e 1 / (1 - q^e z)`` (unit numerator).

    This is the q-Ehrhart polynomial of a unimodular simplex whose vertices
    take the given lambda-values, for example a chain order polytope.
    """
    denom: Dict[int, int] = {}
    for e in exps:
        denom[e] = denom.get(e, 0) + 1
    return partial_fractions({0: ONE}, denom)


# ---------------------------------------------------------------------------
# generating functions of simplices and order polytopes
# ---------------------------------------------------------------------------


def _parallelepiped_points(cols: Sequence[Vector]) -> Iterator[Vector]:
    """Integer points sum mu_i cols[i] with 0 <= mu_i < 1."""
    dim = len(cols[0])
    boxes = []
    for c in range(dim):
        lo = sum(min(0, col[c]) for col in cols)
        hi = sum(max(0, col[c]) for col in cols)
        boxes.append(range(lo, hi + 1))
    for p in itertools.product(*boxes):
        mu = _solve(cols, p)
        if mu is not None and all(0 <= t < 1 for t in mu):
            yield p


def simplex_generating_function(S: LatticeSimplex, lam: LinearForm) -> Tuple[GenNumerator, Dict[int, int]]:
    if lam.dim != S.ambient_dim:
        raise ValueError("linear form dimension does not match the simplex")
    cols = [tuple(v) + (1,) for v in S.vertices]
    numer: Dict[int, Laurent] = {}
    for p in _parallelepiped_points(cols):
        height = p[-1]
        numer[height] = numer.get(height, ZERO) + _q_power(lam(p[:-1]))
    denom: Dict[int, int] = {}
    for v in S.vertices:
        e = lam(v)
        denom[e] = denom.get(e, 0) + 1
    return numer, denom


def ehrhart_simplex(S: LatticeSimplex, lam: LinearForm) -> EhrhartPoly:
    """q-Ehrhart polynomial of a lattice simplex via its cone's fundamental
    parallelepiped and partial fractions."""
    numer, denom = simplex_generating_function(S, lam)
    return partial_fractions(numer, denom)


def order_polytope_pieces(P: Poset, lam: LinearForm) -> Iterator[Tuple[GenNumerator, Dict[int, int]]]:
    """Generating functions of the half-open chain pieces, one per linear
    extension, with strict steps exactly at descents of a natural labeling."""
    if lam.dim != P.size:
        raise ValueError("linear form dimension does not match the poset")
    label = P.natural_labeling()
    c = lam.coeffs
    for ext in P.linear_extensions():
        n = len(ext)
        suffix = [0] * (n + 2)
        for t in range(n, 0, -1):
            suffix[t] = suffix[t + 1] + c[ext[t - 1]]
        denom: Dict[int, int] = {}
        for t in range(1, n + 2):
            denom[suffix[t]] = denom.get(suffix[t], 0) + 1
        zdeg, qexp = 0, 0
        for t in range(1, n):
            if label[ext[t - 1]] > label[ext[t]]:
                zdeg += 1
                qexp += suffix[t + 1]
        yield {zdeg: _q_power(qexp)}, denom


def ehrhart_order_polytope(P: Poset, lam: LinearForm) -> EhrhartPoly:
    """q-Ehrhart polynomial of the order polytope of ``P``."""
    total = EhrhartPoly()
    for numer, denom in order_polytope_pieces(P, lam):
        total = total + partial_fractions(numer, denom)
    return total


def ehrhart(Q: Polytope, lam: LinearForm) -> EhrhartPoly:
    if isinstance(Q, Poset):
        return ehrhart_order_polytope(Q, lam)
    return ehrhart_simplex(Q, lam)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def evaluate_ehrhart(E: EhrhartPoly, a_subst: Union[LinkPoly, Tuple[int, int]], b_subst: int,
                     q_inverse: bool = False) -> LinkPoly:
    """Substitute a, b and (optionally) q -> 1/q in E.

    ``a_subst`` is a monomial alpha^A x^B, given as a ``LinkPoly`` monomial or
    as the pair ``(A, B)``.  The inversion q -> 1/q acts on the coefficients
    C_ij only; the substituted value of a is used as given.
    """
    if isinstance(a_subst, LinkPoly):
        A, B, coeff = a_subst.as_monomial()
        if coeff != 1:
            raise ValueError("a must be substituted by a monic monomial")
    else:
        A, B = a_subst
    acc: Dict[int, List[RatFuncX]] = {}
    for e, part in E.terms:
        for i, c in part:
            w = binom_at(b_subst, i)
            if not w:
                continue
            cc = c.invert_x() if q_inverse else c
            acc.setdefault(A * e, []).append(cc * (Laurent.monomial(B * e) * w))
    return LinkPoly({ae: ratfunc_sum(v) for ae, v in acc.items()})


def evaluate_at_N(E: EhrhartPoly, N: int) -> Laurent:
    """E(q^N, N, q) as a Laurent polynomial in x (must be polynomial)."""
    f = evaluate_ehrhart(E, (0, 2 * N), N).coeff(0)
    if f.den != ONE:
        raise ValueError("evaluation is not a Laurent polynomial")
    return f.num


def reciprocity_check(Q: Polytope, lam: LinearForm, N: int, E: Optional[EhrhartPoly] = None) -> bool:
    """E(q^N, -N, q^-1) == (-1)^dim * (weighted count of interior points of NQ)."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if E is None:
        E = ehrhart(Q, lam)
    lhs = evaluate_ehrhart(E, (0, 2 * N), -N, q_inverse=True)
    rhs = weighted_count(Q, lam, N, interior=True) * (-1) ** polytope_dim(Q)
    return lhs == LinkPoly.from_ratfunc(RatFuncX(rhs))


def max_linear_form(Q: Polytope, lam: LinearForm) -> int:
    """Maximum of lambda over Q (attained at a vertex)."""
    if isinstance(Q, Poset):
        return max(lam(v) for v in lattice_points(Q, 1))
    return max(lam(v) for v in Q.vertices)


def ehrhart_degree_bound_check(Q: Polytope, lam: LinearForm, E: Optional[EhrhartPoly] = None) -> bool:
    """Check maxdeg_a and maxdeg_q of E(a/q, -1, q) against max lambda."""
    if E is None:
        E = ehrhart(Q, lam)
    F = evaluate_ehrhart(E, (2, -2), -1)
    top = max_linear_form(Q, lam)
    return maxdeg(F, "a") <= top and maxdeg(F, "q") <= -top
