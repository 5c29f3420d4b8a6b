"""Exact algebra in the half-power variables x = q^(1/2) and alpha = a^(1/2).

Everything here is immutable and uses exact rationals.  Coefficients are
stored as ``int`` whenever they are integral and as :class:`fractions.Fraction`
otherwise, which keeps the common integer case fast while staying exact.

Types
-----
``Laurent``
    Sparse univariate Laurent polynomial with rational coefficients.  It is
    used both for polynomials in x (``LaurentX``) and, inside :class:`QSeries`,
    for polynomials in alpha.
``RatFuncX``
    Quotient of two ``Laurent`` in x kept in canonical form: the denominator
    has lowest exponent 0 and is monic, and numerator and denominator are
    coprime.  Equality is therefore plain data comparison.
``LinkPoly``
    Finite map from alpha-exponents to nonzero ``RatFuncX`` coefficients.
``QSeries``
    Truncated expansion of a ``LinkPoly`` in descending integer powers of q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

Rat = Fraction
Scalar = Union[int, Fraction]

NEG_INF = -math.inf


def _norm(c: Scalar) -> Scalar:
    """Return ``c`` as an int when it is integral."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def parse_rat(text: str) -> Scalar:
    """Parse ``"p/q"`` or ``"p"`` into an exact scalar."""
    return _norm(Fraction(text))


def format_rat(c: Scalar) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# dense polynomial helpers (coefficient lists, lowest degree first)
# ---------------------------------------------------------------------------


def _strip(p: List[Scalar]) -> List[Scalar]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _content(p: Sequence[int]) -> int:
    g = 0
    for c in p:
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def _to_primitive_int(p: Sequence[Scalar]) -> List[int]:
    """Scale a rational coefficient list to a primitive integer list."""
    lcm = 1
    for c in p:
        if type(c) is Fraction:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in p]
    g = _content(ints)
    if g > 1:
        ints = [c // g for c in ints]
    return ints


def _prem(a: List[int], b: List[int]) -> List[int]:
    """Pseudo-remainder of integer polynomials."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, c in enumerate(b):
            r[i + shift] -= lr * c
        _strip(r)
    return r


def poly_gcd(a: Sequence[Scalar], b: Sequence[Scalar]) -> List[int]:
    """Gcd over Q of two dense polynomials, as a primitive integer polynomial
    with positive leading coefficient.  ``gcd(0, 0)`` is ``[]``."""
    a = _to_primitive_int(_strip(list(a)))
    b = _to_primitive_int(_strip(list(b)))
    if not a:
        a, b = b, a
    if not b:
        if not a:
            return []
        return a if a[-1] > 0 else [-c for c in a]
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [1]
        r = _prem(a, b)
        if r:
            r = _to_primitive_int(r)
        a, b = b, r
    return a if a[-1] > 0 else [-c for c in a]


def poly_divmod(a: Sequence[Scalar], b: Sequence[Scalar]) -> Tuple[List[Scalar], List[Scalar]]:
    """Quotient and remainder over Q."""
    r = [Fraction(c) for c in a]
    _strip(r)
    b = list(b)
    _strip(b)
    if not b:
        raise ZeroDivisionError("zero divisor")
    db = len(b) - 1
    lb = Fraction(b[-1])
    if len(r) - 1 < db:
        return [], [_norm(c) for c in r]
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] / lb
        q[k] = c
        if c:
            for i, bc in enumerate(b):
                r[k + i] -= c * bc
    r = _strip(r[:db])
    return [_norm(c) for c in q], [_norm(c) for c in r]


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


class Laurent:
    """Immutable sparse Laurent polynomial with exact rational coefficients.

    >>> x = Laurent.monomial(1)
    >>> (x - x**-1) * (x + x**-1) == Laurent({2: 1, -2: -1})
    True
    """

    __slots__ = ("_t", "_h")

    def __init__(self, terms: Optional[Mapping[int, Scalar]] = None):
        t: Dict[int, Scalar] = {}
        if terms:
            for e, c in terms.items():
                if c != 0:
                    t[int(e)] = _norm(c)
        self._t = t
        self._h: Optional[int] = None

    @classmethod
    def _raw(cls, t: Dict[int, Scalar]) -> "Laurent":
        obj = cls.__new__(cls)
        obj._t = t
        obj._h = None
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: Scalar = 1) -> "Laurent":
        return cls({exp: coeff})

    @classmethod
    def constant(cls, c: Scalar) -> "Laurent":
        return cls({0: c})

    @classmethod
    def from_dense(cls, coeffs: Sequence[Scalar], shift: int = 0) -> "Laurent":
        return cls({i + shift: c for i, c in enumerate(coeffs) if c != 0})

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Dict[int, Scalar]:
        return dict(self._t)

    def items(self) -> List[Tuple[int, Scalar]]:
        return sorted(self._t.items())

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def min_exp(self) -> int:
        if not self._t:
            raise ValueError("zero polynomial has no exponents")
        return min(self._t)

    def max_exp(self) -> int:
        if not self._t:
            raise ValueError("zero polynomial has no exponents")
        return max(self._t)

    def leading_coeff(self) -> Scalar:
        return self._t[self.max_exp()]

    def coeff(self, exp: int) -> Scalar:
        return self._t.get(exp, 0)

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def dense(self) -> Tuple[int, List[Scalar]]:
        """Return ``(shift, coeffs)`` with ``self = x^shift * sum coeffs[i] x^i``."""
        lo, hi = self.min_exp(), self.max_exp()
        out: List[Scalar] = [0] * (hi - lo + 1)
        for e, c in self._t.items():
            out[e - lo] = c
        return lo, out

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> Optional["Laurent"]:
        if isinstance(other, Laurent):
            return other
        if isinstance(other, (int, Fraction)):
            return Laurent.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(o._t) > len(self._t):
            a, b = o._t, self._t
        else:
            a, b = self._t, o._t
        t = dict(a)
        for e, c in b.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = _norm(s)
            else:
                t.pop(e, None)
        return Laurent._raw(t)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        return Laurent._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Laurent._raw({})
            return Laurent._raw({e: _norm(c * other) for e, c in self._t.items()})
        if not isinstance(other, Laurent):
            return NotImplemented
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        t: Dict[int, Scalar] = {}
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = e1 + e2
                t[e] = t.get(e, 0) + c1 * c2
        return Laurent._raw({e: _norm(c) for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (e, c), = self._t.items()
            return Laurent({e * n: Fraction(c) ** n})
        result = Laurent.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "Laurent":
        """Multiply by x^k."""
        if k == 0:
            return self
        return Laurent._raw({e + k: c for e, c in self._t.items()})

    def invert(self) -> "Laurent":
        """Substitute x -> 1/x."""
        return Laurent._raw({-e: c for e, c in self._t.items()})

    def scale_exp(self, m: int) -> "Laurent":
        """Substitute x -> x^m (m nonzero)."""
        if m == 0:
            raise ValueError("exponent scale must be nonzero")
        return Laurent._raw({e * m: c for e, c in self._t.items()})

    def exact_div(self, other: "Laurent") -> "Laurent":
        """Exact quotient; raises ``ValueError`` when ``other`` does not divide."""
        if not other:
            raise ZeroDivisionError("zero divisor")
        if other.is_monomial():
            (e, c), = other._t.items()
            return Laurent._raw({k - e: _norm(Fraction(v) / c) for k, v in self._t.items()})
        if not self:
            return self
        sa, da = self.dense()
        sb, db = other.dense()
        q, r = poly_divmod(da, db)
        if r:
            raise ValueError("inexact division")
        return Laurent.from_dense(q, sa - sb)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Laurent):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    def __repr__(self) -> str:
        return f"Laurent({dict(sorted(self._t.items()))})"

    def __str__(self) -> str:
        return render_laurent(self, "x", 1)

    # -- serialization ----------------------------------------------------
    def to_pairs(self) -> List[List[Union[int, str]]]:
        return [[e, format_rat(c)] for e, c in sorted(self._t.items())]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence]) -> "Laurent":
        t: Dict[int, Scalar] = {}
        for e, c in pairs:
            t[int(e)] = t.get(int(e), 0) + parse_rat(str(c))
        return cls(t)


LaurentX = Laurent

ZERO = Laurent._raw({})
ONE = Laurent._raw({0: 1})
X = Laurent._raw({1: 1})


def laurent_gcd(a: Laurent, b: Laurent) -> Laurent:
    """Gcd of the polynomial parts (monomial factors ignored)."""
    if not a:
        return ONE if not b else Laurent.from_dense(poly_gcd(b.dense()[1], []))
    if not b:
        return Laurent.from_dense(poly_gcd(a.dense()[1], []))
    return Laurent.from_dense(poly_gcd(a.dense()[1], b.dense()[1]))


# ---------------------------------------------------------------------------
# Rational functions in x
# ---------------------------------------------------------------------------


class RatFuncX:
    """Canonical quotient ``num/den`` of Laurent polynomials in x.

    >>> q = Laurent.monomial(2)
    >>> RatFuncX(q - 1, q - 1) == RatFuncX(ONE)
    True
    """

    __slots__ = ("num", "den", "_h")

    def __init__(self, num: Union[Laurent, Scalar], den: Union[Laurent, Scalar, None] = None,
                 _canonical: bool = False):
        if not isinstance(num, Laurent):
            num = Laurent.constant(num)
        if den is None:
            den = ONE
        elif not isinstance(den, Laurent):
            den = Laurent.constant(den)
        self._h: Optional[int] = None
        if _canonical:
            self.num, self.den = num, den
            return
        if not den:
            raise ZeroDivisionError("zero divisor")
        if not num:
            self.num, self.den = ZERO, ONE
            return
        self.num, self.den = _canonicalize(num, den)

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_laurent(cls, p: Laurent) -> "RatFuncX":
        return cls(p, ONE, _canonical=True) if p else cls(ZERO, ONE, _canonical=True)

    @classmethod
    def monomial(cls, exp: int, coeff: Scalar = 1) -> "RatFuncX":
        return cls.from_laurent(Laurent.monomial(exp, coeff))

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> Optional["RatFuncX"]:
        if isinstance(other, RatFuncX):
            return other
        if isinstance(other, Laurent):
            return RatFuncX.from_laurent(other)
        if isinstance(other, (int, Fraction)):
            return RatFuncX.from_laurent(Laurent.constant(other))
        return None

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_laurent(self) -> bool:
        return self.den == ONE

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RatFuncX(self.num + o.num, self.den)
        if self.den == ONE:
            return RatFuncX(self.num * o.den + o.num, o.den, _canonical=False)
        if o.den == ONE:
            return RatFuncX(o.num * self.den + self.num, self.den, _canonical=False)
        g = laurent_gcd(self.den, o.den)
        if g == ONE:
            return RatFuncX(self.num * o.den + o.num * self.den, self.den * o.den)
        d1 = self.den.exact_div(g)
        d2 = o.den.exact_div(g)
        return RatFuncX(self.num * d2 + o.num * d1, d1 * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFuncX":
        return RatFuncX(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFuncX(ZERO)
            return RatFuncX(self.num * other, self.den, _canonical=True)
        if isinstance(other, Laurent) and other.is_monomial():
            return RatFuncX(self.num * other, self.den, _canonical=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return RatFuncX(ZERO)
        if self.den == ONE and o.den == ONE:
            return RatFuncX.from_laurent(self.num * o.num)
        return RatFuncX(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFuncX":
        if not self.num:
            raise ZeroDivisionError("zero divisor")
        return RatFuncX(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("zero divisor")
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "RatFuncX":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFuncX(self.num ** n, self.den ** n, _canonical=self.num.is_monomial() or n <= 1)

    def invert_x(self) -> "RatFuncX":
        """Substitute x -> 1/x (that is, q -> 1/q)."""
        return RatFuncX(self.num.invert(), self.den.invert())

    def scale_exp(self, m: int) -> "RatFuncX":
        """Substitute x -> x^m."""
        return RatFuncX(self.num.scale_exp(m), self.den.scale_exp(m))

    def degree(self) -> int:
        """Top x-exponent of the expansion at x = infinity."""
        return self.num.max_exp() - self.den.max_exp()

    def expand_at_infinity(self, n_terms: int) -> Tuple[int, List[Scalar]]:
        """Return ``(top, coeffs)`` with ``self = sum coeffs[k] x^(top-k) + O(x^(top-n_terms))``."""
        if not self.num:
            return 0, []
        top = self.degree()
        # work in y = 1/x: num = x^hn * N(y), den = x^hd * D(y), D(0) != 0
        hn = self.num.max_exp()
        hd = self.den.max_exp()
        nn = [Fraction(self.num.coeff(hn - k)) for k in range(n_terms)]
        dd = [Fraction(self.den.coeff(hd - k)) for k in range(n_terms)]
        out: List[Scalar] = []
        inv0 = 1 / dd[0]
        for k in range(n_terms):
            s = nn[k]
            for j in range(1, k + 1):
                if dd[j]:
                    s -= dd[j] * out[k - j]
            out.append(s * inv0)
        return top, [_norm(c) for c in out]

    # -- comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash((self.num, self.den))
        return self._h

    def __repr__(self) -> str:
        return f"RatFuncX({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        return render_ratfunc(self)


def _canonicalize(num: Laurent, den: Laurent) -> Tuple[Laurent, Laurent]:
    lo = den.min_exp()
    if lo:
        num = num.shift(-lo)
        den = den.shift(-lo)
    if not den.is_constant():
        g = laurent_gcd(num, den)
        if g != ONE:
            num = num.exact_div(g)
            den = den.exact_div(g)
    lc = den.leading_coeff()
    if lc != 1:
        inv = Fraction(1) / lc
        num = num * inv
        den = den * inv
    return num, den


def ratfunc_sum(values: Iterable[RatFuncX]) -> RatFuncX:
    """Sum rational functions, adding numerators over equal denominators first."""
    groups: Dict[Laurent, Laurent] = {}
    for v in values:
        if v.num:
            groups[v.den] = groups.get(v.den, ZERO) + v.num
    total = RatFuncX(ZERO)
    for den, num in groups.items():
        if num:
            total = total + RatFuncX(num, den)
    return total


# ---------------------------------------------------------------------------
# LinkPoly
# ---------------------------------------------------------------------------


class LinkPoly:
    """Laurent polynomial in alpha = a^(1/2) with ``RatFuncX`` coefficients."""

    __slots__ = ("_t", "_h")

    def __init__(self, terms: Optional[Mapping[int, Union[RatFuncX, Laurent, Scalar]]] = None):
        t: Dict[int, RatFuncX] = {}
        if terms:
            for e, c in terms.items():
                c = RatFuncX._coerce(c)
                if c:
                    t[int(e)] = c
        self._t = t
        self._h: Optional[int] = None

    @classmethod
    def _raw(cls, t: Dict[int, RatFuncX]) -> "LinkPoly":
        obj = cls.__new__(cls)
        obj._t = t
        obj._h = None
        return obj

    @classmethod
    def monomial(cls, alpha_exp: int = 0, x_exp: int = 0, coeff: Scalar = 1) -> "LinkPoly":
        return cls({alpha_exp: RatFuncX.monomial(x_exp, coeff)})

    @classmethod
    def from_ratfunc(cls, f: RatFuncX, alpha_exp: int = 0) -> "LinkPoly":
        return cls({alpha_exp: f})

    @classmethod
    def zero(cls) -> "LinkPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LinkPoly":
        return cls.monomial(0, 0, 1)

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Dict[int, RatFuncX]:
        return dict(self._t)

    def items(self) -> List[Tuple[int, RatFuncX]]:
        return sorted(self._t.items())

    def coeff(self, alpha_exp: int) -> RatFuncX:
        return self._t.get(alpha_exp, RatFuncX(ZERO))

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def as_monomial(self) -> Tuple[int, int, Scalar]:
        """Return ``(alpha_exp, x_exp, coeff)`` for a monomial, else raise."""
        if len(self._t) != 1:
            raise ValueError("not a monomial")
        (ae, f), = self._t.items()
        if f.den != ONE or not f.num.is_monomial():
            raise ValueError("not a monomial")
        (xe, c), = f.num._t.items()
        return ae, xe, c

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> Optional["LinkPoly"]:
        if isinstance(other, LinkPoly):
            return other
        if isinstance(other, (RatFuncX, Laurent, int, Fraction)):
            f = RatFuncX._coerce(other)
            return LinkPoly._raw({0: f} if f else {})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self._t)
        for e, c in o._t.items():
            s = t[e] + c if e in t else c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return LinkPoly._raw(t)

    __radd__ = __add__

    def __neg__(self) -> "LinkPoly":
        return LinkPoly._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return LinkPoly.zero()
            return LinkPoly._raw({e: c * other for e, c in self._t.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc: Dict[int, List[RatFuncX]] = {}
        for e1, c1 in self._t.items():
            for e2, c2 in o._t.items():
                acc.setdefault(e1 + e2, []).append(c1 * c2)
        t = {}
        for e, vals in acc.items():
            s = vals[0] if len(vals) == 1 else ratfunc_sum(vals)
            if s:
                t[e] = s
        return LinkPoly._raw(t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFuncX._coerce(other)
        if o is None:
            if isinstance(other, LinkPoly) and len(other._t) == 1:
                (e, f), = other._t.items()
                return self.shift(-e, 0) * f.inverse()
            return NotImplemented
        inv = o.inverse()
        return LinkPoly._raw({e: c * inv for e, c in self._t.items()})

    def __pow__(self, n: int) -> "LinkPoly":
        if n < 0:
            if len(self._t) != 1:
                raise ValueError("negative power of a non-monomial in alpha")
            (e, f), = self._t.items()
            return LinkPoly({e * n: f ** n})
        result = LinkPoly.one()
        for _ in range(n):
            result = result * self
        return result

    def shift(self, alpha_exp: int, x_exp: int = 0, coeff: Scalar = 1) -> "LinkPoly":
        """Multiply by ``coeff * alpha^alpha_exp * x^x_exp``."""
        if coeff == 0:
            return LinkPoly.zero()
        m = Laurent.monomial(x_exp, coeff)
        return LinkPoly._raw({e + alpha_exp: c * m for e, c in self._t.items()})

    # -- substitutions ----------------------------------------------------
    def subst_q_inv(self) -> "LinkPoly":
        """q -> 1/q (x -> 1/x)."""
        return LinkPoly._raw({e: c.invert_x() for e, c in self._t.items()})

    def subst_a_inv(self) -> "LinkPoly":
        """a -> 1/a (alpha -> 1/alpha)."""
        return LinkPoly._raw({-e: c for e, c in self._t.items()})

    def mirror(self) -> "LinkPoly":
        """a -> 1/a and q -> 1/q together."""
        return LinkPoly._raw({-e: c.invert_x() for e, c in self._t.items()})

    def specialize_a(self, n: int) -> RatFuncX:
        """Set a = q^n, that is alpha = x^n."""
        return ratfunc_sum(c * Laurent.monomial(e * n) for e, c in self._t.items())

    # -- comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._t == o._t

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    def __repr__(self) -> str:
        return f"LinkPoly({dict(sorted(self._t.items()))!r})"

    def __str__(self) -> str:
        return render_linkpoly(self)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> List[dict]:
        return [
            {"a_half_exp": e, "num": c.num.to_pairs(), "den": c.den.to_pairs()}
            for e, c in sorted(self._t.items())
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "LinkPoly":
        acc: Dict[int, List[RatFuncX]] = {}
        for item in data:
            f = RatFuncX(Laurent.from_pairs(item["num"]), Laurent.from_pairs(item["den"]))
            acc.setdefault(int(item["a_half_exp"]), []).append(f)
        return cls({e: ratfunc_sum(v) for e, v in acc.items()})


def linkpoly_sum(values: Iterable[LinkPoly]) -> LinkPoly:
    """Sum many ``LinkPoly`` values, grouping numerators by (alpha, denominator)."""
    groups: Dict[int, Dict[Laurent, Laurent]] = {}
    for v in values:
        for e, c in v._t.items():
            g = groups.setdefault(e, {})
            g[c.den] = g.get(c.den, ZERO) + c.num
    t: Dict[int, RatFuncX] = {}
    for e, g in groups.items():
        s = ratfunc_sum(RatFuncX(n, d) for d, n in g.items() if n)
        if s:
            t[e] = s
    return LinkPoly._raw(t)


# ---------------------------------------------------------------------------
# degrees
# ---------------------------------------------------------------------------


def maxdeg(p: LinkPoly, var: str) -> Union[Fraction, float]:
    """Maximal degree in ``a`` or ``q`` as an exact half-integer, ``-inf`` for 0.

    The q-degree of a rational function is the top exponent of its Laurent
    expansion at q = infinity.
    """
    if not p:
        return NEG_INF
    if var == "a":
        return Fraction(max(p._t), 2)
    if var == "q":
        return Fraction(max(c.degree() for c in p._t.values()), 2)
    raise ValueError(f"unknown variable {var!r}; expected 'a' or 'q'")


# ---------------------------------------------------------------------------
# series at q = infinity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QSeries:
    """Truncated series ``sum_k coeffs[k](alpha) * x^(top - 2k)``.

    ``coeffs`` are Laurent polynomials in alpha; consecutive slices differ by
    one integer power of q.  ``top`` is ``None`` for the zero series.
    """

    order: int
    top: Optional[int]
    coeffs: Tuple[Laurent, ...]

    @property
    def top_q(self) -> Optional[Fraction]:
        return None if self.top is None else Fraction(self.top, 2)

    def is_zero(self) -> bool:
        return self.top is None

    def slice(self, k: int) -> Laurent:
        return self.coeffs[k] if k < len(self.coeffs) else ZERO

    def truncate(self, order: int) -> "QSeries":
        order = min(order, self.order)
        return QSeries(order, self.top, self.coeffs[:order])

    def agrees_with(self, other: "QSeries", n: Optional[int] = None) -> bool:
        n = min(self.order, other.order) if n is None else n
        if self.is_zero() or other.is_zero():
            return all(not self.slice(k) for k in range(n)) and all(not other.slice(k) for k in range(n))
        if self.top != other.top:
            return False
        return all(self.slice(k) == other.slice(k) for k in range(n))

    def __mul__(self, other: "QSeries") -> "QSeries":
        order = min(self.order, other.order)
        if self.is_zero() or other.is_zero():
            return QSeries(order, None, ())
        out = [ZERO] * order
        for i in range(order):
            a = self.slice(i)
            if not a:
                continue
            for j in range(order - i):
                b = other.slice(j)
                if b:
                    out[i + j] = out[i + j] + a * b
        return _make_series(order, self.top + other.top, out)

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; the leading slice must be a monomial in alpha."""
        if self.is_zero() or not self.coeffs[0].is_monomial():
            raise ValueError("leading slice is not invertible")
        (e, c), = self.coeffs[0]._t.items()
        lead_inv = Laurent.monomial(-e, Fraction(1) / c)
        out: List[Laurent] = []
        for k in range(self.order):
            s = ONE if k == 0 else ZERO
            for j in range(1, k + 1):
                s = s - self.slice(j) * out[k - j]
            out.append(s * lead_inv)
        return QSeries(self.order, -self.top, tuple(out))

    def __truediv__(self, other: "QSeries") -> "QSeries":
        return self * other.inverse()

    def scale(self, alpha_exp: int, coeff: Scalar = 1) -> "QSeries":
        m = Laurent.monomial(alpha_exp, coeff)
        return QSeries(self.order, self.top, tuple(c * m for c in self.coeffs))

    def to_linkpoly(self) -> LinkPoly:
        """The retained terms as an honest polynomial."""
        acc: Dict[int, Dict[int, Scalar]] = {}
        if self.top is not None:
            for k, sl in enumerate(self.coeffs):
                for ae, c in sl._t.items():
                    acc.setdefault(ae, {})[self.top - 2 * k] = c
        return LinkPoly({ae: Laurent(t) for ae, t in acc.items()})


def _make_series(order: int, top: int, slices: List[Laurent]) -> QSeries:
    k = 0
    while k < len(slices) and not slices[k]:
        k += 1
    if k == len(slices):
        return QSeries(order, None, ())
    # slices past the original truncation are unknown, so the order shrinks
    known = slices[k:]
    return QSeries(len(known), top - 2 * k, tuple(known))


def series_at_q_infinity(p: LinkPoly, order: int) -> QSeries:
    """Expand ``p`` in descending powers of q, keeping ``order`` slices.

    Raises ``ValueError`` if terms with q-exponents of both parities relative
    to the leading term occur (the series would need q^(1/2) steps).
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    if not p:
        return QSeries(order, None, ())
    top = max(c.degree() for c in p._t.values())
    depth = 2 * order
    acc: List[Dict[int, Scalar]] = [dict() for _ in range(order)]
    for ae, f in p._t.items():
        ftop, cs = f.expand_at_infinity(depth)
        for k, c in enumerate(cs):
            if not c:
                continue
            off = top - (ftop - k)
            if off >= depth:
                break
            if off % 2:
                raise ValueError("series mixes integer and half-integer q-steps")
            acc[off // 2][ae] = c
    return QSeries(order, top, tuple(Laurent(t) for t in acc))


# ---------------------------------------------------------------------------
# q-Pochhammer symbols
# ---------------------------------------------------------------------------


def pochhammer(base: LinkPoly, step: int, k: Optional[int], order: Optional[int] = None):
    """``prod_{i<k} (1 - base * q^(i*step/2))``.

    ``base`` is a monomial ``LinkPoly``; ``step`` is an x-exponent, so
    ``step = -2`` means multiplication by q^(-1).  With ``k=None`` the
    infinite product is expanded as a ``QSeries`` with ``order`` slices.
    """
    ae, xe, c = base.as_monomial()
    if k is not None:
        if k < 0:
            raise ValueError("k must be nonnegative")
        out = LinkPoly.one()
        for i in range(k):
            out = out * (LinkPoly.one() - LinkPoly.monomial(ae, xe + i * step, c))
        return out
    if order is None or order < 1:
        raise ValueError("an infinite product needs a truncation order")
    if step >= 0:
        raise ValueError("divergent product")
    out = LinkPoly.one()
    i = 0
    while xe + i * step > -2 * order:
        out = out * (LinkPoly.one() - LinkPoly.monomial(ae, xe + i * step, c))
        i += 1
    return series_at_q_infinity(out, order)


# ---------------------------------------------------------------------------
# text rendering
# ---------------------------------------------------------------------------


def _half_power(var: str, e: int, den: int) -> str:
    f = Fraction(e, den)
    if f == 1:
        return var
    if f.denominator == 1:
        return f"{var}^{f.numerator}" if f > 0 else f"{var}^({f.numerator})"
    return f"{var}^({f.numerator}/{f.denominator})"


def render_laurent(p: Laurent, var: str = "q", den: int = 2) -> str:
    """Render with descending exponents; ``den=2`` prints x-exponents as q-halves."""
    if not p:
        return "0"
    parts: List[str] = []
    for e, c in sorted(p._t.items(), reverse=True):
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = format_rat(mag)
        elif mag == 1:
            body = _half_power(var, e, den)
        else:
            body = f"{format_rat(mag)}*{_half_power(var, e, den)}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    s = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def render_ratfunc(f: RatFuncX) -> str:
    num = render_laurent(f.num)
    if f.den == ONE:
        return num
    return f"({num})/({render_laurent(f.den)})"


def render_linkpoly(p: LinkPoly) -> str:
    """Terms sorted by descending a-degree, explicit half powers like a^(3/2)."""
    if not p:
        return "0"
    parts = []
    for e, c in sorted(p._t.items(), reverse=True):
        coeff = render_ratfunc(c)
        if e == 0:
            parts.append(f"({coeff})")
        else:
            parts.append(f"({coeff})*{_half_power('a', e, 2)}")
    return " + ".join(parts)
