"""Exact arithmetic over Z[T, T^-1], its fraction field, and matrices over both.

Polynomials are stored densely (lowest exponent plus a coefficient tuple),
which is the layout the kernels in :mod:`alexgauss.kernels` consume; the
sparse ``exponent -> coefficient`` view is available as :attr:`LaurentPoly.terms`.

Textual form lists terms by ascending exponent::

    1 - T + T^2        T^-1 + T        -3*T^-2 + 2        0

Grammar (whitespace optional around signs)::

    poly  := "0" | term (("+" | "-") term)*
    term  := ["-"] (int | [int "*"] "T" ["^" ["-"] int])
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as _igcd
from typing import Iterable, Mapping, Sequence, Union

from alexgauss import kernels
from alexgauss.errors import DegenerateInputError, DimensionError, ParityError, ParseError


class LaurentPoly:
    """Immutable integer Laurent polynomial in one variable ``T``."""

    __slots__ = ("_low", "_c", "_hash")

    def __init__(self, coeffs: Sequence[int] = (), low: int = 0):
        c = list(coeffs)
        start = 0
        while start < len(c) and not c[start]:
            start += 1
        end = len(c)
        while end > start and not c[end - 1]:
            end -= 1
        self._c = tuple(int(x) for x in c[start:end])
        self._low = low + start if self._c else 0
        self._hash = None

    @classmethod
    def from_terms(cls, terms: Mapping[int, int]) -> "LaurentPoly":
        nz = {e: c for e, c in terms.items() if c}
        if not nz:
            return ZERO
        lo, hi = min(nz), max(nz)
        return cls([nz.get(e, 0) for e in range(lo, hi + 1)], lo)

    @classmethod
    def monomial(cls, coeff: int = 1, exp: int = 1) -> "LaurentPoly":
        return cls([coeff], exp)

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls([c], 0)

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        return parse_poly(text)

    # -- structure ---------------------------------------------------------
    @property
    def terms(self) -> dict:
        """Sparse view: exponent -> nonzero coefficient."""
        lo = self._low
        return {lo + i: c for i, c in enumerate(self._c) if c}

    @property
    def low(self) -> int:
        return self._low

    @property
    def high(self) -> int:
        return self._low + len(self._c) - 1

    @property
    def coeffs(self) -> tuple:
        return self._c

    def is_zero(self) -> bool:
        return not self._c

    def is_unit(self) -> bool:
        """True for ``+-T^m``."""
        return len(self._c) == 1 and abs(self._c[0]) == 1

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if isinstance(other, LaurentPoly):
            return self._c == other._c and (self._low == other._low or not self._c)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._low, self._c))
        return self._hash

    # -- arithmetic --------------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly.const(x)
        return None

    def _addsub(self, other, sign):
        if not other._c:
            return self
        if not self._c:
            return other if sign > 0 else -other
        lo = min(self._low, other._low)
        hi = max(self.high, other.high)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self._c):
            out[self._low - lo + i] = c
        off = other._low - lo
        if sign > 0:
            for i, c in enumerate(other._c):
                out[off + i] += c
        else:
            for i, c in enumerate(other._c):
                out[off + i] -= c
        return LaurentPoly(out, lo)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._addsub(o, 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._addsub(o, -1)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o._addsub(self, -1)

    def __neg__(self):
        return LaurentPoly([-c for c in self._c], self._low)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._c or not o._c:
            return ZERO
        if len(o._c) == 1:
            k = o._c[0]
            return LaurentPoly([c * k for c in self._c], self._low + o._low)
        if len(self._c) == 1:
            k = self._c[0]
            return LaurentPoly([c * k for c in o._c], self._low + o._low)
        return LaurentPoly(kernels.mul(self._c, o._c), self._low + o._low)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise ArithmeticError("negative power of a non-unit Laurent polynomial")
            return LaurentPoly([self._c[0] ** (-k)], self._low * k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, m: int) -> "LaurentPoly":
        """Multiply by ``T^m``."""
        return LaurentPoly(self._c, self._low + m) if self._c else self

    def __call__(self, x):
        """Evaluate at ``x`` (int, Fraction, ...); negative powers need ``1/x``."""
        if not self._c:
            return 0
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        if self._low >= 0:
            return acc * x**self._low
        return acc * Fraction(1) / Fraction(x) ** (-self._low)

    def substitute_power(self, k: int) -> "LaurentPoly":
        """``p(T^k)``."""
        return LaurentPoly.from_terms({e * k: c for e, c in self.terms.items()})

    def reflect(self) -> "LaurentPoly":
        """``p(T^-1)``."""
        return LaurentPoly(self._c[::-1], -self.high) if self._c else self

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


ZERO = LaurentPoly()
ONE = LaurentPoly([1])
T = LaurentPoly([1], 1)


def lp_ring(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown ring operation {op!r}")


def lp_normalize(p: LaurentPoly) -> LaurentPoly:
    """Canonical representative of ``p`` up to units ``+-T^m``.

    The lowest exponent is moved to 0.  The sign makes ``p(1)`` positive; if
    ``p(1) == 0`` the lowest-degree coefficient is made positive instead.
    """
    if p.is_zero():
        raise DegenerateInputError("cannot normalize the zero polynomial")
    q = p.shift(-p.low)
    at_one = sum(q.coeffs)
    if at_one < 0 or (at_one == 0 and q.coeffs[0] < 0):
        q = -q
    return q


def lp_subst_even(p: LaurentPoly) -> LaurentPoly:
    """Map ``T^2 -> T``; every exponent must be even."""
    odd = [e for e in p.terms if e % 2]
    if odd:
        raise ParityError(f"odd exponent(s) {odd} in {p}")
    return LaurentPoly.from_terms({e // 2: c for e, c in p.terms.items()})


# -- fractions --------------------------------------------------------------

def _poly_content(c):
    g = 0
    for x in c:
        g = _igcd(g, x)
        if g == 1:
            break
    return g


class LaurentFrac:
    """Reduced quotient of Laurent polynomials.

    Canonical form: ``den`` has lowest exponent 0 and positive leading
    coefficient, and ``num``, ``den`` share no common factor in ``Z[T]`` other
    than units.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _reduced=False):
        num = _as_poly(num)
        den = ONE if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("LaurentFrac with zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def of(cls, x) -> "LaurentFrac":
        if isinstance(x, LaurentFrac):
            return x
        return cls(_as_poly(x), ONE, _reduced=True)

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den._c == (1,)

    def as_poly(self) -> LaurentPoly:
        """Return the polynomial value; the denominator must be 1."""
        if not self.is_poly():
            raise ArithmeticError(f"{self} is not a Laurent polynomial")
        return self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.is_poly() and self.num == other
        if isinstance(other, LaurentFrac):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den)) if not self.is_poly() else hash(self.num)
        return self._hash

    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentFrac):
            return x
        if isinstance(x, (int, LaurentPoly)):
            return LaurentFrac.of(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            if self.is_poly():
                return LaurentFrac(self.num + o.num, ONE, _reduced=True)
            return LaurentFrac(self.num + o.num, self.den)
        return LaurentFrac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return LaurentFrac(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_poly() and o.is_poly():
            return LaurentFrac(self.num * o.num, ONE, _reduced=True)
        return LaurentFrac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentFrac":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero fraction")
        return LaurentFrac(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o * self.inverse()

    def __call__(self, x):
        return Fraction(self.num(x)) / Fraction(self.den(x))

    def __repr__(self):
        return f"LaurentFrac({self})"

    def __str__(self):
        if self.is_poly():
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"


def _as_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError(f"expected LaurentPoly or int, got {type(x).__name__}")


def _reduce(num: LaurentPoly, den: LaurentPoly):
    if num.is_zero():
        return ZERO, ONE
    shift = num._low - den._low
    n, d = list(num._c), list(den._c)
    if len(d) == 1:
        g = _igcd(_poly_content(n), d[0])
        if d[0] < 0:
            g = -g
        return LaurentPoly([c // g for c in n], shift), LaurentPoly([d[0] // g])
    g = kernels.gcd(n, d)
    if g != [1]:
        n = kernels.divexact(n, g)
        d = kernels.divexact(d, g)
    if d[-1] < 0:
        n = [-c for c in n]
        d = [-c for c in d]
    return LaurentPoly(n, shift), LaurentPoly(d, 0)


def lf_ring(a: LaurentFrac, b: LaurentFrac, op: str) -> LaurentFrac:
    a, b = LaurentFrac.of(a), LaurentFrac.of(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise ZeroDivisionError("division by the zero fraction")
        return a / b
    raise ValueError(f"unknown field operation {op!r}")


Scalar = Union[LaurentPoly, LaurentFrac]


# -- matrices ---------------------------------------------------------------

class LaurentMatrix:
    """Immutable dense matrix with LaurentPoly or LaurentFrac entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        rows = tuple(tuple(_entry(e) for e in row) for row in entries)
        if not rows or not rows[0]:
            raise DimensionError("matrix must have at least one row and column")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise DimensionError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self.entries = rows

    @classmethod
    def identity(cls, n: int) -> "LaurentMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def parse(cls, rows: Sequence[Sequence[str]]) -> "LaurentMatrix":
        return cls([[parse_poly(s) if isinstance(s, str) else s for s in row] for row in rows])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_square(self):
        return self.rows == self.cols

    def is_polynomial(self) -> bool:
        return all(isinstance(e, LaurentPoly) or e.is_poly() for row in self.entries for e in row)

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash(tuple(hash(e) for row in self.entries for e in row))

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(zip(*self.entries))

    @property
    def T(self):
        return self.transpose()

    def __add__(self, other):
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in matrix sum")
        return LaurentMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __sub__(self, other):
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in matrix difference")
        return LaurentMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        )

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            new = []
            for col in cols:
                acc = None
                for a, b in zip(row, col):
                    if a and b:
                        acc = a * b if acc is None else acc + a * b
                new.append(ZERO if acc is None else acc)
            out.append(new)
        return LaurentMatrix(out)

    def map(self, f) -> "LaurentMatrix":
        return LaurentMatrix([[f(e) for e in row] for row in self.entries])

    def minor(self, drop_rows=(), drop_cols=()) -> "LaurentMatrix":
        dr, dc = set(drop_rows), set(drop_cols)
        return LaurentMatrix(
            [[e for j, e in enumerate(row) if j not in dc] for i, row in enumerate(self.entries) if i not in dr]
        )

    def det(self):
        return lf_det(self) if not self.is_polynomial() else lp_det(self)

    def to_strings(self):
        return [[str(e) for e in row] for row in self.entries]

    def __repr__(self):
        return f"LaurentMatrix({self.to_strings()!r})"

    def __str__(self):
        cells = self.to_strings()
        w = max(len(s) for row in cells for s in row)
        return "\n".join("[ " + "  ".join(s.rjust(w) for s in row) + " ]" for row in cells)


def _entry(e):
    if isinstance(e, (LaurentPoly, LaurentFrac)):
        return e
    if isinstance(e, int):
        return LaurentPoly.const(e)
    raise TypeError(f"unsupported matrix entry {e!r}")


def lp_det(m: LaurentMatrix) -> LaurentPoly:
    """Exact determinant of a square matrix of Laurent polynomials.

    Each row is shifted to start at exponent 0, the fraction-free elimination
    kernel runs on the resulting integer polynomials, and the shifts are
    restored afterwards.
    """
    if not m.is_square():
        raise DimensionError(f"determinant of non-square {m.shape} matrix")
    rows = []
    total_shift = 0
    for row in m.entries:
        polys = [e if isinstance(e, LaurentPoly) else e.as_poly() for e in row]
        nz = [p for p in polys if p]
        if not nz:
            return ZERO
        lo = min(p.low for p in nz)
        total_shift += lo
        rows.append([[0] * (p.low - lo) + list(p.coeffs) if p else [] for p in polys])
    try:
        d = kernels.det(rows)
    except ArithmeticError as exc:
        raise AssertionError(f"fraction-free elimination hit an inexact division: {exc}") from exc
    return LaurentPoly(d, total_shift)


def lf_det(m: LaurentMatrix) -> LaurentFrac:
    """Determinant over the fraction field: clear each row's denominators, then ``lp_det``."""
    if not m.is_square():
        raise DimensionError(f"determinant of non-square {m.shape} matrix")
    scale = LaurentFrac.of(1)
    rows = []
    for row in m.entries:
        fr = [LaurentFrac.of(e) for e in row]
        dens = []
        for f in fr:
            if not f.is_poly() and f.den not in dens:
                dens.append(f.den)
        mult = ONE
        for d in dens:
            mult = mult * d
        rows.append([(f * mult).as_poly() for f in fr])
        scale = scale * LaurentFrac(ONE, mult)
    return LaurentFrac.of(lp_det(LaurentMatrix(rows))) * scale


def lf_inverse(m: LaurentMatrix) -> LaurentMatrix:
    """Inverse over the fraction field by Gauss-Jordan elimination (small matrices)."""
    if not m.is_square():
        raise DimensionError("inverse of non-square matrix")
    n = m.rows
    a = [[LaurentFrac.of(e) for e in row] + [LaurentFrac.of(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(m.entries)]
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv = a[k][k].inverse()
        a[k] = [x * inv for x in a[k]]
        for r in range(n):
            if r != k and a[r][k]:
                f = a[r][k]
                a[r] = [x - f * y for x, y in zip(a[r], a[k])]
    return LaurentMatrix([row[n:] for row in a])


# -- text form --------------------------------------------------------------

def format_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for e, c in sorted(p.terms.items()):
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            var = "T" if e == 1 else f"T^{e}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


_TOKEN = re.compile(
    r"\s*([+-])?\s*(?:(\d+)\s*\*\s*T(?:\s*\^\s*(-?\d+))?|T(?:\s*\^\s*(-?\d+))?|(\d+))\s*"
)


def parse_poly(text: str) -> LaurentPoly:
    """Inverse of :func:`format_poly`; terms may appear in any order."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    terms: dict = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse {text!r} at offset {pos}")
        sign, k_coef, k_exp, t_exp, const = m.groups()
        if sign is None and not first:
            raise ParseError(f"missing sign between terms in {text!r}")
        sg = -1 if sign == "-" else 1
        if const is not None:
            c, e = int(const), 0
        elif k_coef is not None:
            c, e = int(k_coef), int(k_exp) if k_exp is not None else 1
        else:
            c, e = 1, int(t_exp) if t_exp is not None else 1
        terms[e] = terms.get(e, 0) + sg * c
        pos = m.end()
        first = False
    return LaurentPoly.from_terms(terms)
