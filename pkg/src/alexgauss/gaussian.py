"""Finite presentations ``omega * phi(Q)`` of Gaussian elements.

A :class:`GaussElem` stores a scalar ``omega`` (a reduced Laurent fraction),
a square matrix ``Q`` and an ordered tuple of leg labels.  Entry ``Q[a][b]``
is the coefficient attached to ``x_a p_b`` in the exponent, so composition of
elements on the same legs is plain matrix multiplication.

Contraction of two legs has a closed form (see :func:`g_contract_pair`).
Longer runs can be folded pairwise or evaluated in one shot through a Schur
complement (:func:`g_contract_run` with ``method="wform"``); the bulk helpers
contract every leg into one.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence, Tuple

from alexgauss.errors import ContextError, DimensionError, SingularContractionError
from alexgauss.laurent import (
    ONE,
    ZERO,
    LaurentFrac,
    LaurentMatrix,
    lf_inverse,
)

Leg = Hashable


def _scalar(x) -> LaurentFrac:
    return LaurentFrac.of(x)


def _simplify(e):
    # keep polynomial entries as LaurentPoly so determinants take the fast path
    if isinstance(e, LaurentFrac) and e.is_poly():
        return e.num
    return e


@dataclass(frozen=True)
class GaussElem:
    scalar: LaurentFrac
    q: LaurentMatrix
    legs: Tuple[Leg, ...]

    def __post_init__(self):
        object.__setattr__(self, "scalar", _scalar(self.scalar))
        object.__setattr__(self, "legs", tuple(self.legs))
        if not self.q.is_square():
            raise DimensionError(f"matrix part must be square, got {self.q.shape}")
        if self.q.rows != len(self.legs):
            raise DimensionError(f"{self.q.rows}x{self.q.rows} matrix part on {len(self.legs)} legs")
        if len(set(self.legs)) != len(self.legs):
            raise DimensionError(f"duplicate leg labels {self.legs}")
        if self.scalar.is_zero():
            raise DimensionError("scalar part must be nonzero")

    @property
    def size(self) -> int:
        return len(self.legs)

    def index(self, leg: Leg) -> int:
        try:
            return self.legs.index(leg)
        except ValueError:
            raise DimensionError(f"leg {leg!r} is not live in {self.legs}") from None

    def entry(self, a: Leg, b: Leg):
        return self.q[self.index(a), self.index(b)]

    def block(self, legs: Sequence[Leg]) -> LaurentMatrix:
        idx = [self.index(l) for l in legs]
        return LaurentMatrix([[self.q[r, c] for c in idx] for r in idx])

    def __matmul__(self, other):
        return g_compose(self, other)

    def __str__(self):
        return f"({self.scalar}) * phi on legs {list(self.legs)}\n{self.q}"


@dataclass(frozen=True)
class ContractionPlan:
    """Ordered contraction steps ``(sources, target)``; each step is one run."""

    steps: Tuple[Tuple[Tuple[Leg, ...], Leg], ...]

    def __init__(self, steps: Iterable[Tuple[Sequence[Leg], Leg]]):
        object.__setattr__(self, "steps", tuple((tuple(src), tgt) for src, tgt in steps))

    @classmethod
    def descending(cls, legs: Sequence[Leg], target: Leg) -> "ContractionPlan":
        """One run over ``legs`` sorted high to low, landing on ``target``."""
        return cls([(tuple(sorted(legs, reverse=True)), target)])

    @classmethod
    def pairwise(cls, pairs: Iterable[Tuple[Leg, Leg, Leg]]) -> "ContractionPlan":
        return cls([((i, j), k) for i, j, k in pairs])

    def validate(self, legs: Sequence[Leg]):
        live = set(legs)
        for src, tgt in self.steps:
            if not src:
                raise DimensionError("empty contraction step")
            missing = [l for l in src if l not in live]
            if missing:
                raise DimensionError(f"step {src}->{tgt}: legs {missing} are not live")
            if len(set(src)) != len(src):
                raise DimensionError(f"step {src}->{tgt} repeats a leg")
            live -= set(src)
            if tgt in live:
                raise DimensionError(f"step {src}->{tgt}: target is not fresh")
            live.add(tgt)
        return live

    def __len__(self):
        return len(self.steps)


# -- constructors -------------------------------------------------------------

def g_phi(a: LaurentMatrix, legs: Sequence[Leg] = None) -> GaussElem:
    legs = tuple(range(1, a.rows + 1)) if legs is None else tuple(legs)
    if not a.is_square() or a.rows != len(legs):
        raise DimensionError(f"{a.shape} matrix does not fit {len(legs)} legs")
    return GaussElem(LaurentFrac.of(1), a, legs)


def g_identity(legs: Sequence[Leg]) -> GaussElem:
    legs = tuple(legs)
    return GaussElem(LaurentFrac.of(1), LaurentMatrix.identity(len(legs)), legs)


def g_embed(e: GaussElem, positions: Mapping[Leg, int], total: int,
            legs: Sequence[Leg] = None) -> GaussElem:
    """Insert ``e`` into an identity element on ``total`` legs.

    ``positions`` maps each leg of ``e`` to a 1-based slot.  Slots need not be
    increasing: placing the first leg in a later slot realizes the flipped
    factor.  The new legs are ``1..total`` unless ``legs`` is given.
    """
    if set(positions) != set(e.legs):
        raise DimensionError("positions must cover exactly the legs of the element")
    slots = [positions[l] for l in e.legs]
    if len(set(slots)) != len(slots):
        raise DimensionError(f"slot collision in {slots}")
    if any(not 1 <= s <= total for s in slots):
        raise DimensionError(f"slots {slots} outside 1..{total}")
    new_legs = tuple(range(1, total + 1)) if legs is None else tuple(legs)
    if len(new_legs) != total:
        raise DimensionError("label list does not match total")
    rows = [[ONE if r == c else ZERO for c in range(total)] for r in range(total)]
    for a, sa in enumerate(slots):
        for b, sb in enumerate(slots):
            rows[sa - 1][sb - 1] = e.q[a, b]
    return GaussElem(e.scalar, LaurentMatrix(rows), new_legs)


def g_compose(a: GaussElem, b: GaussElem, *rest: GaussElem) -> GaussElem:
    if a.legs != b.legs:
        raise ContextError(f"leg mismatch: {a.legs} vs {b.legs}")
    out = GaussElem(a.scalar * b.scalar, (a.q @ b.q).map(_simplify), a.legs)
    for r in rest:
        out = g_compose(out, r)
    return out


def g_inverse(e: GaussElem) -> GaussElem:
    return GaussElem(e.scalar.inverse(), lf_inverse(e.q).map(_simplify), e.legs)


def g_relabel(e: GaussElem, mapping: Mapping[Leg, Leg]) -> GaussElem:
    return GaussElem(e.scalar, e.q, tuple(mapping.get(l, l) for l in e.legs))


def g_permute(e: GaussElem, order: Sequence[Leg]) -> GaussElem:
    """Same element with legs listed in ``order``."""
    order = tuple(order)
    if len(order) != len(e.legs) or set(order) != set(e.legs):
        raise DimensionError("not a permutation of the leg set")
    return GaussElem(e.scalar, e.block(order), order)


def g_equal(a: GaussElem, b: GaussElem) -> bool:
    """Equality as elements: same scalar and same matrix up to leg order."""
    if set(a.legs) != set(b.legs):
        return False
    b = g_permute(b, a.legs)
    return a.scalar == b.scalar and a.q == b.q


# -- contraction ----------------------------------------------------------------

def _frac(x):
    return x if isinstance(x, LaurentFrac) else LaurentFrac.of(x)


def g_contract_pair(e: GaussElem, i: Leg, j: Leg, k: Leg) -> GaussElem:
    """Contract legs ``i`` then ``j`` into ``k``.

    With ``gamma = Q[j][i]`` and ``delta = 1 / (1 - gamma)``::

        omega'  = omega * delta
        Q'[k,k] = Q[i,j] + Q[i,i] Q[j,j] delta
        Q'[k,b] = Q[i,b] + Q[i,i] Q[j,b] delta
        Q'[a,k] = Q[a,j] + Q[a,i] Q[j,j] delta
        Q'[a,b] = Q[a,b] + Q[a,i] Q[j,b] delta

    ``k`` takes the position of ``i`` and ``j`` disappears.
    """
    if i == j:
        raise DimensionError("contraction needs two distinct legs")
    pi, pj = e.index(i), e.index(j)
    if k in e.legs and k not in (i, j):
        raise DimensionError(f"target leg {k!r} is not fresh")
    q = e.q.entries
    one_minus = _frac(1 - q[pj][pi])
    if one_minus.is_zero():
        raise SingularContractionError(f"contracting ({i!r},{j!r}): Q[j][i] = 1")
    delta = one_minus.inverse()
    unit_delta = delta.is_poly() and delta.num == ONE

    def times_delta(x):
        if not x:
            return x
        return x if unit_delta else _frac(x) * delta

    keep = [r for r in range(len(e.legs)) if r != pj]
    # col_i[a] * delta and row_j[b], the rank-one correction
    col = {a: times_delta(q[a][pi]) for a in keep if q[a][pi]}
    rowj = {b: q[pj][b] for b in range(len(e.legs)) if q[pj][b]}
    rows = []
    for a in keep:
        row = []
        ca = col.get(a)
        for b in keep:
            src_col = pj if b == pi else b
            base = q[a][src_col]
            if ca is not None and src_col in rowj:
                base = base + ca * rowj[src_col]
            row.append(_simplify(base))
        rows.append(row)
    new_legs = tuple(k if l == i else l for l in e.legs if l != j)
    return GaussElem(e.scalar * delta, LaurentMatrix(rows), new_legs)


def _run_fold(e: GaussElem, legs: Sequence[Leg], k: Leg) -> GaussElem:
    head = legs[0]
    cur = e
    for nxt in legs[1:]:
        cur = g_contract_pair(cur, head, nxt, head)
    return g_relabel(cur, {head: k})


def _ones(n):
    return [LaurentFrac.of(1)] * n


def _wform_parts(e: GaussElem, legs: Sequence[Leg]):
    # B = Q_LL - 1, Mn strictly upper triangular ones, S = 1 - Mn B
    r = len(legs)
    qll = e.block(legs)
    b = [[_frac(qll[x, y]) - (1 if x == y else 0) for y in range(r)] for x in range(r)]
    s = []
    for x in range(r):
        row = []
        for y in range(r):
            acc = LaurentFrac.of(1 if x == y else 0)
            for z in range(x + 1, r):
                acc = acc - b[z][y]
            row.append(acc)
        s.append(row)
    return b, s


def _run_wform(e: GaussElem, legs: Sequence[Leg], k: Leg) -> GaussElem:
    r = len(legs)
    b, s = _wform_parts(e, legs)
    smat = LaurentMatrix([[_simplify(x) for x in row] for row in s])
    det_s = _frac(smat.det())
    if det_s.is_zero():
        raise SingularContractionError(f"contraction run {list(legs)} is singular")
    sinv = lf_inverse(smat).entries
    spect = [l for l in e.legs if l not in legs]
    # sinv_1 = S^-1 1 ; sinv_m = S^-1 Mn (columns: (Mn)_{zy} = 1 for z < y)
    sinv_1 = [sum((_frac(sinv[x][y]) for y in range(r)), LaurentFrac.of(0)) for x in range(r)]
    sinv_m = [[sum((_frac(sinv[x][z]) for z in range(y)), LaurentFrac.of(0)) for y in range(r)]
              for x in range(r)]
    colsum_b = [sum((b[x][y] for x in range(r)), LaurentFrac.of(0)) for y in range(r)]
    kk = LaurentFrac.of(1) + sum((colsum_b[y] * sinv_1[y] for y in range(r)), LaurentFrac.of(0))
    # v = 1^T (1 + B S^-1 Mn), a row vector over the run
    v = [LaurentFrac.of(1) + sum((colsum_b[z] * sinv_m[z][y] for z in range(r)), LaurentFrac.of(0))
         for y in range(r)]
    qls = [[_frac(e.entry(legs[x], t)) for t in spect] for x in range(r)]
    qsl = [[_frac(e.entry(t, legs[x])) for x in range(r)] for t in spect]
    m_qls = [[sum((sinv_m[x][y] * qls[y][c] for y in range(r)), LaurentFrac.of(0))
              for c in range(len(spect))] for x in range(r)]
    out_legs = []
    for l in e.legs:
        if l == legs[0]:
            out_legs.append(k)
        elif l not in legs:
            out_legs.append(l)
    def entry(a, bb):
        if a == k and bb == k:
            return kk
        if a == k:
            c = spect.index(bb)
            return sum((v[y] * qls[y][c] for y in range(r)), LaurentFrac.of(0))
        ra = spect.index(a)
        if bb == k:
            return sum((qsl[ra][x] * sinv_1[x] for x in range(r)), LaurentFrac.of(0))
        c = spect.index(bb)
        return _frac(e.entry(a, bb)) + sum((qsl[ra][x] * m_qls[x][c] for x in range(r)),
                                           LaurentFrac.of(0))

    q = LaurentMatrix([[_simplify(entry(a, bb)) for bb in out_legs] for a in out_legs])
    return GaussElem(e.scalar / det_s, q, tuple(out_legs))


def g_contract_run(e: GaussElem, legs: Sequence[Leg], k: Leg, method: str = "fold") -> GaussElem:
    """Contract the ordered ``legs`` into ``k``.

    ``method="fold"`` applies :func:`g_contract_pair` left to right;
    ``method="wform"`` uses the one-shot block formula.  Both give the same
    element.
    """
    legs = list(legs)
    if not legs:
        raise DimensionError("empty contraction run")
    if len(set(legs)) != len(legs):
        raise DimensionError("contraction run repeats a leg")
    for l in legs:
        e.index(l)
    if k in e.legs and k not in legs:
        raise DimensionError(f"target leg {k!r} is not fresh")
    if len(legs) == 1:
        return g_relabel(e, {legs[0]: k})
    if method == "fold":
        return _run_fold(e, legs, k)
    if method == "wform":
        return _run_wform(e, legs, k)
    raise ValueError(f"unknown contraction method {method!r}")


def apply_plan(e: GaussElem, plan: ContractionPlan, trace: list = None) -> GaussElem:
    """Run each plan step in turn; optional ``trace`` collects intermediates."""
    plan.validate(e.legs)
    cur = e
    for src, tgt in plan.steps:
        cur = g_contract_run(cur, src, tgt)
        if trace is not None:
            trace.append(cur)
    return cur


# -- bulk contraction -------------------------------------------------------------

def _shifted_minor(q: LaurentMatrix) -> LaurentMatrix:
    # 1 - Q with the first row and last column of Q removed
    n = q.rows
    rows = []
    for r in range(1, n):
        row = []
        for c in range(n - 1):
            x = q[r, c]
            row.append(_simplify((ONE if r - 1 == c else ZERO) - x))
        rows.append(row)
    return LaurentMatrix(rows)


def bulk_determinant(e: GaussElem):
    """``det(1 - Q^)`` where ``Q^`` drops the first row and last column of ``Q``."""
    if e.size == 1:
        return LaurentFrac.of(1)
    return _frac(_shifted_minor(e.q).det())


def g_bulk(e: GaussElem, target: Leg = None) -> Tuple[LaurentFrac, GaussElem]:
    """Contract all legs, in their listed order, into one.

    Returns ``(scalar, residual)`` with ``scalar = omega / det(1 - Q^)``.  The
    residual is the 1-leg element with that scalar; its matrix entry comes from
    a bordered determinant.
    """
    target = e.legs[0] if target is None else target
    if e.size == 1:
        return e.scalar, g_relabel(e, {e.legs[0]: target})
    det = bulk_determinant(e)
    if det.is_zero():
        raise SingularContractionError("det(1 - Q^) vanishes")
    scalar = e.scalar / det
    b, s = _wform_parts(e, e.legs)
    n = e.size
    colsum_b = [sum((b[x][y] for x in range(n)), LaurentFrac.of(0)) for y in range(n)]
    bordered = [row + [LaurentFrac.of(1)] for row in s] + [colsum_b + [LaurentFrac.of(0)]]
    bordered_m = LaurentMatrix([[_simplify(x) for x in row] for row in bordered])
    det_s = _frac(LaurentMatrix([[_simplify(x) for x in row] for row in s]).det())
    kk = LaurentFrac.of(1) - _frac(bordered_m.det()) / det_s
    return scalar, GaussElem(scalar, LaurentMatrix([[_simplify(kk)]]), (target,))


def g_transpose_bulk(e: GaussElem, target: Leg = None) -> Tuple[LaurentFrac, GaussElem]:
    """Transpose the matrix part, then fold pairwise from the last leg to the first."""
    target = e.legs[0] if target is None else target
    t = GaussElem(e.scalar, e.q.transpose(), e.legs)
    res = g_contract_run(t, list(reversed(e.legs)), target, method="fold")
    return res.scalar, res
