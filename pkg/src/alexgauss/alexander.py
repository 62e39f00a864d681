"""Alexander polynomial of an upward long diagram, three ways.

``matrix``
    Determinant of the crossing-block presentation matrix.
``gaussian``
    One Gaussian element on legs ``0..2n+1`` built from twisted crossing
    blocks, contracted in bulk from the top leg down.  Its scalar is the
    reciprocal of ``Delta(T^2)`` up to a unit.
``stitch``
    One R-matrix per crossing on legs ``1..2n``, contracted pairwise along a
    :class:`~alexgauss.gaussian.ContractionPlan`.

Every pipeline reports ``lp_normalize``-canonical output, so results can be
compared with ``==``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Optional

from alexgauss.diagram import UpwardDiagram, diag_mirror
from alexgauss.errors import (
    AlexGaussError,
    DegenerateInputError,
    ParityError,
    PipelineError,
    SingularContractionError,
)
from alexgauss.gaussian import (
    ContractionPlan,
    GaussElem,
    apply_plan,
    g_compose,
    g_embed,
    g_identity,
    g_inverse,
    g_phi,
    g_transpose_bulk,
)
from alexgauss.laurent import (
    ONE,
    ZERO,
    LaurentFrac,
    LaurentMatrix,
    LaurentPoly,
    format_poly,
    lp_det,
    lp_normalize,
    lp_subst_even,
)
from alexgauss.xc import xc_standard

METHODS = ("matrix", "gaussian", "stitch")


@dataclass(frozen=True)
class AlexResult:
    poly: LaurentPoly
    method: str
    raw: LaurentPoly

    def to_text(self) -> str:
        return f"Δ(T) = {format_poly(self.poly)}"

    def as_dict(self) -> dict:
        return {
            "method": self.method,
            "poly": [[e, c] for e, c in sorted(self.poly.terms.items())],
            "text": format_poly(self.poly),
            "raw": format_poly(self.raw),
        }


def _tpow(k: int) -> LaurentPoly:
    return LaurentPoly.monomial(1, k)


# -- presentation matrix ---------------------------------------------------------

def alex_matrix(d: UpwardDiagram) -> LaurentMatrix:
    size = d.edge_count
    rows = [[ONE if r == c else ZERO for c in range(size)] for r in range(size)]
    for x in d.crossings:
        i, j, ts = x.over_in - 1, x.under_in - 1, _tpow(x.sign)
        rows[i][i + 1] = rows[i][i + 1] - ts
        rows[i][j + 1] = rows[i][j + 1] + ts - ONE
        rows[j][j + 1] = rows[j][j + 1] - ONE
    return LaurentMatrix(rows)


def alex_via_matrix(d: UpwardDiagram) -> AlexResult:
    raw = lp_det(alex_matrix(d))
    if raw.is_zero():
        raise DegenerateInputError("presentation matrix is singular; the diagram is not a knot diagram")
    return AlexResult(lp_normalize(raw), "matrix", raw)


# -- Gaussian bulk pipeline --------------------------------------------------------

def _crossing_block_t(sign: int) -> GaussElem:
    # transpose of N^sign with N = [[T^2, 0], [1 - T^2, 1]]
    t2s = _tpow(2 * sign)
    return g_phi(LaurentMatrix([[t2s, ONE - t2s], [ZERO, ONE]]))


def gaussian_element(d: UpwardDiagram) -> GaussElem:
    """Product of the embedded blocks on legs ``0..2n+1`` (leg 0 is the extra strand)."""
    m = d.edge_count
    legs = tuple(range(m + 1))
    e = g_identity(legs)
    for x in d.crossings:
        blk = g_embed(_crossing_block_t(x.sign), {1: x.over_in + 1, 2: x.under_in + 1}, m + 1, legs)
        e = g_compose(e, blk)
    return e


def _reciprocal_poly(scalar: LaurentFrac, what: str) -> LaurentPoly:
    inv = scalar.inverse()
    if not inv.is_poly():
        raise PipelineError(f"{what}: reciprocal scalar {inv} is not a Laurent polynomial")
    return inv.num


def _finish(raw: LaurentPoly, method: str) -> AlexResult:
    try:
        halved = lp_subst_even(raw)
    except ParityError as exc:
        raise PipelineError(f"{method}: {exc}") from exc
    return AlexResult(lp_normalize(halved), method, raw)


def alex_via_gaussian(d: UpwardDiagram) -> AlexResult:
    e = gaussian_element(d)
    try:
        scalar, _ = g_transpose_bulk(e, target="bar")
    except SingularContractionError as exc:
        raise PipelineError(f"gaussian: {exc}") from exc
    return _finish(_reciprocal_poly(scalar, "gaussian"), "gaussian")


# -- stitching pipeline -------------------------------------------------------------

def stitch_element(d: UpwardDiagram, form: str = "A-form") -> GaussElem:
    """``prod_c R_{over_in, under_in}^{sign}`` on legs ``1..2n`` in crossing order."""
    r = xc_standard(form)
    base = {1: r.elem(), -1: g_inverse(r.elem())}
    total = 2 * d.n
    e = g_identity(range(1, total + 1))
    for x in d.crossings:
        e = g_compose(e, g_embed(base[x.sign], {1: x.over_in, 2: x.under_in}, total))
    return e


def default_plan(d: UpwardDiagram) -> ContractionPlan:
    """Contract edges from the highest label down to leg 1."""
    return ContractionPlan.descending(range(1, 2 * d.n + 1), 1)


def alex_via_stitch(d: UpwardDiagram, plan: Optional[ContractionPlan] = None,
                    form: str = "A-form", trace: list = None) -> AlexResult:
    if d.n == 0:
        return AlexResult(ONE, "stitch", ONE)
    e = stitch_element(d, form)
    plan = default_plan(d) if plan is None else plan
    try:
        out = apply_plan(e, plan, trace)
    except SingularContractionError as exc:
        raise PipelineError(f"stitch: {exc}") from exc
    if out.size != 1:
        raise PipelineError(f"stitch: plan leaves {out.size} legs, expected one")
    return _finish(_reciprocal_poly(out.scalar, "stitch"), "stitch")


PIPELINES = {
    "matrix": alex_via_matrix,
    "gaussian": alex_via_gaussian,
    "stitch": alex_via_stitch,
}


# -- comparison ---------------------------------------------------------------------

@dataclass
class CompareReport:
    results: Dict[str, AlexResult] = field(default_factory=dict)
    errors: Dict[str, str] = field(default_factory=dict)

    @property
    def polys(self) -> Dict[str, LaurentPoly]:
        return {k: r.poly for k, r in self.results.items()}

    @property
    def agree(self) -> bool:
        vals = list(self.polys.values())
        return not self.errors and len(vals) > 0 and all(v == vals[0] for v in vals)

    @property
    def poly(self) -> Optional[LaurentPoly]:
        return next(iter(self.results.values())).poly if self.results else None

    @property
    def delta_at_one(self) -> Optional[int]:
        p = self.poly
        return None if p is None else sum(p.coeffs)

    @property
    def palindromic(self) -> Optional[bool]:
        p = self.poly
        return None if p is None else lp_normalize(p.reflect()) == p

    @property
    def ok(self) -> bool:
        return self.agree and self.delta_at_one in (1, -1) and bool(self.palindromic)

    def as_dict(self) -> dict:
        return {
            "results": {k: r.as_dict() for k, r in self.results.items()},
            "errors": dict(self.errors),
            "agree": self.agree,
            "delta_at_one": self.delta_at_one,
            "palindromic": self.palindromic,
        }

    def __eq__(self, other):
        if not isinstance(other, CompareReport):
            return NotImplemented
        return self.polys == other.polys and self.errors.keys() == other.errors.keys()


def alex_compare(d: UpwardDiagram, methods=METHODS) -> CompareReport:
    rep = CompareReport()
    for name in methods:
        try:
            rep.results[name] = PIPELINES[name](d)
        except AlexGaussError as exc:
            rep.errors[name] = f"{type(exc).__name__}: {exc}"
    return rep


def alex_compare_mirror(d: UpwardDiagram) -> bool:
    """True when the mirror image yields the same comparison report."""
    return alex_compare(d) == alex_compare(diag_mirror(d))


def render_json(obj: dict) -> str:
    return json.dumps({"schema": 1, **obj}, indent=2, ensure_ascii=False)
