"""Truncated Weyl-Heisenberg algebra on labelled legs.

This module is the independent oracle for the Gaussian calculus.  Each leg
carries one pair of generators ``x, p`` with ``p x = x p + 1``; distinct legs
commute.  Elements are stored in normal order (all ``x`` before all ``p``) with
coefficients that are truncated power series in ``u`` over the rationals.
Inside the oracle ``T`` stands for ``exp(u)``.

Truncation
----------
``d`` bounds the ``u``-order and is exact: every operation here commutes with
dropping ``u^(d+1)`` terms.  ``g`` bounds the total generator degree but is only
applied when projecting for comparison (:func:`w_project`, :func:`w_equal`),
because cutting high-degree terms before a reordering step would lose the
lower-degree terms that the ``+1`` of the commutator produces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as _cartesian
from math import comb, factorial
from typing import Dict, Hashable, Iterable, Mapping, Sequence, Tuple

from alexgauss.errors import ContextError, DimensionError, DomainError
from alexgauss.laurent import LaurentFrac, LaurentMatrix, LaurentPoly

Leg = Hashable
LegMono = Tuple[int, int]  # (x exponent, p exponent) on one leg
Key = Tuple[LegMono, ...]


@dataclass(frozen=True)
class Context:
    """Truncation orders shared by every operand of a computation."""

    d: int = 4
    g: int = 6

    def __post_init__(self):
        if self.d < 0 or self.g < 0:
            raise ValueError("truncation orders must be non-negative")


DEFAULT_CONTEXT = Context()


# -- series -----------------------------------------------------------------

class Series:
    """Truncated power series ``c_0 + c_1 u + ... + c_d u^d`` with rational coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable, d: int):
        c = [Fraction(x) for x in coeffs][: d + 1]
        c.extend([Fraction(0)] * (d + 1 - len(c)))
        self.c = tuple(c)

    @property
    def d(self):
        return len(self.c) - 1

    @classmethod
    def const(cls, x, d: int) -> "Series":
        return cls([x], d)

    @classmethod
    def exp_of(cls, k, d: int) -> "Series":
        """``exp(k u)`` truncated, i.e. ``T^k``."""
        k = Fraction(k)
        return cls([k**n / factorial(n) for n in range(d + 1)], d)

    @classmethod
    def from_laurent(cls, p, d: int) -> "Series":
        """Expand a LaurentPoly or LaurentFrac at ``T = exp(u)``."""
        if isinstance(p, LaurentFrac):
            return cls.from_laurent(p.num, d) * cls.from_laurent(p.den, d).inverse()
        if isinstance(p, int):
            return cls.const(p, d)
        acc = [Fraction(0)] * (d + 1)
        for e, coef in p.terms.items():
            for n in range(d + 1):
                acc[n] += coef * Fraction(e) ** n / factorial(n)
        return cls(acc, d)

    def _check(self, other):
        if self.d != other.d:
            raise ContextError(f"series truncation mismatch: {self.d} vs {other.d}")

    def is_zero(self):
        return not any(self.c)

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        return isinstance(other, Series) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        self._check(other)
        return Series([a + b for a, b in zip(self.c, other.c)], self.d)

    def __sub__(self, other):
        self._check(other)
        return Series([a - b for a, b in zip(self.c, other.c)], self.d)

    def __neg__(self):
        return Series([-a for a in self.c], self.d)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Series([a * other for a in self.c], self.d)
        self._check(other)
        d = self.d
        out = [Fraction(0)] * (d + 1)
        for i, a in enumerate(self.c):
            if a:
                for j in range(d + 1 - i):
                    b = other.c[j]
                    if b:
                        out[i + j] += a * b
        return Series(out, d)

    __rmul__ = __mul__

    def valuation(self) -> int:
        """Lowest ``u``-order with nonzero coefficient (``d+1`` for zero)."""
        for i, a in enumerate(self.c):
            if a:
                return i
        return self.d + 1

    def inverse(self) -> "Series":
        if not self.c[0]:
            raise DomainError("series with zero constant term is not invertible")
        d = self.d
        inv = [Fraction(0)] * (d + 1)
        inv[0] = 1 / self.c[0]
        for n in range(1, d + 1):
            s = sum(self.c[k] * inv[n - k] for k in range(1, n + 1))
            inv[n] = -s / self.c[0]
        return Series(inv, d)

    def __repr__(self):
        return f"Series({[str(x) for x in self.c]})"


def series_matrix(m: LaurentMatrix, d: int):
    """Entrywise expansion of a LaurentMatrix at ``T = exp(u)``."""
    return [[Series.from_laurent(e, d) for e in row] for row in m.entries]


# -- elements ---------------------------------------------------------------

@dataclass(frozen=True)
class WeylElem:
    """Finite sum of normally ordered monomials with series coefficients."""

    legs: Tuple[Leg, ...]
    terms: Mapping[Key, Series] = field(compare=False)
    ctx: Context = DEFAULT_CONTEXT

    def __post_init__(self):
        if len(set(self.legs)) != len(self.legs):
            raise DimensionError(f"duplicate leg labels {self.legs}")
        clean = {}
        for k, v in self.terms.items():
            if len(k) != len(self.legs):
                raise DimensionError("monomial does not match leg set")
            if v.d != self.ctx.d:
                raise ContextError("coefficient truncation differs from context")
            if v:
                clean[k] = v
        object.__setattr__(self, "terms", clean)

    def __eq__(self, other):
        if not isinstance(other, WeylElem):
            return NotImplemented
        return self.legs == other.legs and self.ctx == other.ctx and self.terms == other.terms

    def __add__(self, other):
        _same(self, other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return WeylElem(self.legs, out, self.ctx)

    def __sub__(self, other):
        return self + other.scale(Series.const(-1, self.ctx.d))

    def scale(self, s: Series) -> "WeylElem":
        return WeylElem(self.legs, {k: v * s for k, v in self.terms.items()}, self.ctx)

    def __mul__(self, other):
        return w_mul(self, other)

    def is_zero(self):
        return not self.terms

    def degree(self) -> int:
        return max((sum(a + b for a, b in k) for k in self.terms), default=0)

    def __repr__(self):
        return f"WeylElem(legs={self.legs}, {len(self.terms)} terms, d={self.ctx.d})"


def _same(a: WeylElem, b: WeylElem):
    if a.ctx != b.ctx:
        raise ContextError(f"truncation mismatch: {a.ctx} vs {b.ctx}")
    if a.legs != b.legs:
        raise ContextError(f"leg mismatch: {a.legs} vs {b.legs}")


def w_unit(legs: Sequence[Leg], ctx: Context = DEFAULT_CONTEXT) -> WeylElem:
    legs = tuple(legs)
    return WeylElem(legs, {((0, 0),) * len(legs): Series.const(1, ctx.d)}, ctx)


def w_monomial(legs: Sequence[Leg], exps: Mapping[Leg, LegMono], coeff=1,
               ctx: Context = DEFAULT_CONTEXT) -> WeylElem:
    """Normally ordered monomial ``coeff * prod x_l^a p_l^b`` with ``exps[l] = (a, b)``."""
    legs = tuple(legs)
    unknown = set(exps) - set(legs)
    if unknown:
        raise DimensionError(f"unknown legs {unknown}")
    key = tuple(tuple(exps.get(l, (0, 0))) for l in legs)
    c = coeff if isinstance(coeff, Series) else Series.const(coeff, ctx.d)
    return WeylElem(legs, {key: c}, ctx)


def w_x(legs, leg, ctx: Context = DEFAULT_CONTEXT) -> WeylElem:
    return w_monomial(legs, {leg: (1, 0)}, 1, ctx)


def w_p(legs, leg, ctx: Context = DEFAULT_CONTEXT) -> WeylElem:
    return w_monomial(legs, {leg: (0, 1)}, 1, ctx)


# -- products -----------------------------------------------------------------

def _leg_product(a1: int, b1: int, a2: int, b2: int):
    """``x^a1 p^b1 * x^a2 p^b2`` in normal order, as ``[(coeff, (alpha, beta))]``."""
    if b1 == 0 or a2 == 0:
        return [(1, (a1 + a2, b1 + b2))]
    return [
        (factorial(k) * comb(b1, k) * comb(a2, k), (a1 + a2 - k, b1 + b2 - k))
        for k in range(min(b1, a2) + 1)
    ]


def _key_product(k1: Key, k2: Key):
    per_leg = [_leg_product(a1, b1, a2, b2) for (a1, b1), (a2, b2) in zip(k1, k2)]
    for combo in _cartesian(*per_leg):
        c = 1
        for coef, _ in combo:
            c *= coef
        yield c, tuple(m for _, m in combo)


def w_mul(a: WeylElem, b: WeylElem, *rest: WeylElem) -> WeylElem:
    """Product in the Weyl algebra, reduced to normal order."""
    _same(a, b)
    d = a.ctx.d
    out: Dict[Key, Series] = {}
    for k1, s1 in a.terms.items():
        v1 = s1.valuation()
        for k2, s2 in b.terms.items():
            if v1 + s2.valuation() > d:
                continue
            s = s1 * s2
            for c, k in _key_product(k1, k2):
                t = s * c
                out[k] = out[k] + t if k in out else t
    res = WeylElem(a.legs, out, a.ctx)
    for r in rest:
        res = w_mul(res, r)
    return res


def _commutative_mul(a: WeylElem, b: WeylElem) -> WeylElem:
    # product in the polynomial ring: exponents add, no reordering terms
    d = a.ctx.d
    out: Dict[Key, Series] = {}
    for k1, s1 in a.terms.items():
        v1 = s1.valuation()
        for k2, s2 in b.terms.items():
            if v1 + s2.valuation() > d:
                continue
            k = tuple((x1 + x2, y1 + y2) for (x1, y1), (x2, y2) in zip(k1, k2))
            t = s1 * s2
            out[k] = out[k] + t if k in out else t
    return WeylElem(a.legs, out, a.ctx)


# -- contraction --------------------------------------------------------------

def w_contract(e: WeylElem, i: Leg, j: Leg, k: Leg) -> WeylElem:
    """Multiply the leg-``i`` factor by the leg-``j`` factor and store it on leg ``k``.

    Leg ``k`` takes the position of ``i``; ``j`` is removed.  ``k`` must be
    fresh or equal to ``i`` or ``j``.
    """
    if i == j:
        raise DimensionError("contraction needs two distinct legs")
    if i not in e.legs or j not in e.legs:
        raise DimensionError(f"legs {i!r}, {j!r} must both be live in {e.legs}")
    if k in e.legs and k not in (i, j):
        raise DimensionError(f"target leg {k!r} is not fresh")
    pi, pj = e.legs.index(i), e.legs.index(j)
    new_legs = tuple(k if l == i else l for l in e.legs if l != j)
    out: Dict[Key, Series] = {}
    for key, s in e.terms.items():
        (a1, b1), (a2, b2) = key[pi], key[pj]
        for c, mono in _leg_product(a1, b1, a2, b2):
            nk = tuple(mono if idx == pi else m for idx, m in enumerate(key) if idx != pj)
            t = s * c
            out[nk] = out[nk] + t if nk in out else t
    return WeylElem(new_legs, out, e.ctx)


def w_contract_run(e: WeylElem, legs: Sequence[Leg], k: Leg) -> WeylElem:
    """Fold :func:`w_contract` left to right over ``legs``, landing on ``k``."""
    legs = list(legs)
    if not legs:
        raise DimensionError("empty contraction run")
    if len(set(legs)) != len(legs):
        raise DimensionError("contraction run repeats a leg")
    if k in e.legs and k not in legs:
        raise DimensionError(f"target leg {k!r} is not fresh")
    cur = e
    head = legs[0]
    for nxt in legs[1:]:
        cur = w_contract(cur, head, nxt, head)
    return w_relabel(cur, {head: k})


def w_relabel(e: WeylElem, mapping: Mapping[Leg, Leg]) -> WeylElem:
    """Rename legs; positions are kept."""
    new = tuple(mapping.get(l, l) for l in e.legs)
    return WeylElem(new, e.terms, e.ctx)


def w_permute(e: WeylElem, order: Sequence[Leg]) -> WeylElem:
    """Reorder legs to ``order`` (a permutation of ``e.legs``)."""
    order = tuple(order)
    if sorted(map(repr, order)) != sorted(map(repr, e.legs)):
        raise DimensionError("not a permutation of the leg set")
    idx = [e.legs.index(l) for l in order]
    return WeylElem(order, {tuple(k[i] for i in idx): v for k, v in e.terms.items()}, e.ctx)


# -- exponentials of quadratics ----------------------------------------------

def w_phi(a, legs: Sequence[Leg], ctx: Context = DEFAULT_CONTEXT) -> WeylElem:
    """Normal-ordered exponential of ``x^T (A - 1) p``.

    ``a`` is a square LaurentMatrix (expanded at ``T = exp(u)``) or a nested
    list of :class:`Series`; it must reduce to the identity modulo ``u``.
    """
    legs = tuple(legs)
    rows = series_matrix(a, ctx.d) if isinstance(a, LaurentMatrix) else a
    n = len(legs)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise DimensionError(f"matrix size does not match {n} legs")
    gen: Dict[Key, Series] = {}
    for r in range(n):
        for c in range(n):
            s = rows[r][c]
            if s.d != ctx.d:
                raise ContextError("matrix entry truncation differs from context")
            shifted = s - Series.const(1, ctx.d) if r == c else s
            if shifted.c[0]:
                raise DomainError("matrix is not congruent to the identity modulo u")
            if shifted:
                key = [(0, 0)] * n
                if r == c:
                    key[r] = (1, 1)
                else:
                    key[r] = (1, 0)
                    key[c] = (0, 1)
                gen[tuple(key)] = shifted
    e = WeylElem(legs, gen, ctx)
    total = w_unit(legs, ctx)
    power = total
    for m in range(1, ctx.d + 1):
        power = _commutative_mul(power, e)
        if power.is_zero():
            break
        total = total + power.scale(Series.const(Fraction(1, factorial(m)), ctx.d))
    return total


def w_from_gauss(scalar, q: LaurentMatrix, legs: Sequence[Leg],
                 ctx: Context = DEFAULT_CONTEXT) -> WeylElem:
    """Expand ``scalar * phi(q)``; ``scalar`` is Laurent data or a Series."""
    s = scalar if isinstance(scalar, Series) else Series.from_laurent(scalar, ctx.d)
    return w_phi(q, legs, ctx).scale(s)


def w_project(e: WeylElem, g: int = None) -> WeylElem:
    """Drop monomials whose total generator degree exceeds ``g``."""
    g = e.ctx.g if g is None else g
    return WeylElem(e.legs, {k: v for k, v in e.terms.items() if sum(a + b for a, b in k) <= g}, e.ctx)


def w_equal(a: WeylElem, b: WeylElem, g: int = None) -> bool:
    """Coefficientwise equality inside the ``(d, g)`` window."""
    _same(a, b)
    return w_project(a, g) == w_project(b, g)
