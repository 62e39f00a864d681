"""R-matrices on one Weyl leg, twisting, and executable XC axioms.

``R_ij`` places the first tensor factor of ``R`` on leg ``i`` and the second
on leg ``j``; for ``i > j`` this is the flipped matrix, realized by slot order
in :func:`alexgauss.gaussian.g_embed`.  The three-fold multiplication in the
axioms is read as an ordered contraction run over the named legs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Optional

from alexgauss.errors import AlexGaussError, DimensionError, TwistError
from alexgauss.gaussian import (
    GaussElem,
    g_compose,
    g_contract_run,
    g_embed,
    g_equal,
    g_inverse,
    g_phi,
)
from alexgauss.laurent import (
    ONE,
    T,
    ZERO,
    LaurentFrac,
    LaurentMatrix,
    LaurentPoly,
)

KINDS = ("A-form", "B-form", "custom")


@dataclass(frozen=True)
class RMatrix:
    m: LaurentMatrix
    kind: str = "custom"

    def __post_init__(self):
        if self.m.shape != (2, 2):
            raise DimensionError(f"R-matrix must be 2x2, got {self.m.shape}")
        if self.kind not in KINDS:
            raise ValueError(f"unknown R-matrix kind {self.kind!r}")
        if LaurentFrac.of(self.m.det()).is_zero():
            raise DimensionError("R-matrix is singular")

    def elem(self) -> GaussElem:
        return g_phi(self.m)

    def inverse_elem(self) -> GaussElem:
        return g_inverse(self.elem())


@dataclass(frozen=True)
class TwistElem:
    """Matrix part ``d`` of a one-leg twisting element ``psi = phi([d])``."""

    d: LaurentPoly

    def __post_init__(self):
        if self.d.is_zero():
            raise TwistError("twisting datum must be invertible")


def xc_standard(kind: str, m: Optional[LaurentMatrix] = None) -> RMatrix:
    if kind == "A-form":
        return RMatrix(LaurentMatrix([[T, ZERO], [ONE - T * T, T]]), "A-form")
    if kind == "B-form":
        return RMatrix(LaurentMatrix([[T * T, ZERO], [ONE - T * T, ONE]]), "B-form")
    if kind == "custom":
        if m is None:
            raise ValueError("custom R-matrix needs a matrix")
        return RMatrix(m, "custom")
    raise ValueError(f"unknown R-matrix kind {kind!r}")


def r_leg(r: RMatrix, i: int, j: int, total: int, inverse: bool = False) -> GaussElem:
    """``R_ij`` (or its inverse) on legs ``1..total``."""
    base = r.inverse_elem() if inverse else r.elem()
    return g_embed(base, {1: i, 2: j}, total)


def kappa_leg(kappa: GaussElem, i: int, total: int, inverse: bool = False) -> GaussElem:
    base = g_inverse(kappa) if inverse else kappa
    return g_embed(base, {base.legs[0]: i}, total)


def balancing(value=1) -> GaussElem:
    """Balancing element as a one-leg Gaussian: a scalar unit times ``phi(1)``.

    ``value`` may also be a ready-made one-leg :class:`GaussElem`.
    """
    if isinstance(value, GaussElem):
        if value.size != 1:
            raise DimensionError("balancing element lives on one leg")
        return value
    return GaussElem(LaurentFrac.of(value), LaurentMatrix.identity(1), (1,))


# -- Yang-Baxter ------------------------------------------------------------------

@dataclass
class YBResult:
    holds: bool
    lhs: LaurentMatrix
    rhs: LaurentMatrix


def xc_yang_baxter(r: RMatrix) -> YBResult:
    lhs = g_compose(r_leg(r, 1, 2, 3), r_leg(r, 1, 3, 3), r_leg(r, 2, 3, 3))
    rhs = g_compose(r_leg(r, 2, 3, 3), r_leg(r, 1, 3, 3), r_leg(r, 1, 2, 3))
    return YBResult(lhs.scalar == rhs.scalar and lhs.q == rhs.q, lhs.q, rhs.q)


# -- twisting ------------------------------------------------------------------------

def xc_twist(r: RMatrix, psi) -> RMatrix:
    """``diag(1, d^-1) * R * diag(d, 1)`` after checking that ``diag(d, d)`` commutes with ``R``."""
    if not isinstance(psi, TwistElem):
        psi = TwistElem(psi if isinstance(psi, LaurentPoly) else LaurentPoly.const(psi))
    d = psi.d
    dd = LaurentMatrix([[d, ZERO], [ZERO, d]])
    if dd @ r.m != r.m @ dd:
        raise TwistError("psi (x) psi does not commute with R")
    dinv = LaurentFrac(ONE, d)
    left = LaurentMatrix([[LaurentFrac.of(1), LaurentFrac.of(0)], [LaurentFrac.of(0), dinv]])
    right = LaurentMatrix([[d, ZERO], [ZERO, ONE]])
    out = (left @ r.m @ right).map(lambda x: x.num if isinstance(x, LaurentFrac) and x.is_poly() else x)
    kind = "B-form" if r.kind == "A-form" and d == T else "custom"
    return RMatrix(out, kind)


# -- axioms -------------------------------------------------------------------------

@dataclass
class AxiomResult:
    number: int
    statement: str
    passed: bool
    lhs: str = ""
    rhs: str = ""
    error: str = ""

    def as_dict(self):
        return {
            "axiom": self.number,
            "statement": self.statement,
            "pass": self.passed,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "error": self.error,
        }


@dataclass
class AxiomReport:
    matrix: LaurentMatrix
    kind: str
    balancing: str
    results: List[AxiomResult] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.results)

    def failed(self):
        return [r.number for r in self.results if not r.passed]

    def to_text(self) -> str:
        lines = [f"R = {self.matrix.to_strings()} ({self.kind}), kappa = {self.balancing}"]
        for r in self.results:
            mark = "PASS" if r.passed else "FAIL"
            lines.append(f"  axiom {r.number} {mark}: {r.statement}")
            if not r.passed:
                if r.error:
                    lines.append(f"    error: {r.error}")
                else:
                    lines.append(f"    lhs: {r.lhs}")
                    lines.append(f"    rhs: {r.rhs}")
        lines.append("all axioms hold" if self.all_pass else f"failed axioms: {self.failed()}")
        return "\n".join(lines)

    def as_dict(self):
        return {
            "matrix": self.matrix.to_strings(),
            "kind": self.kind,
            "balancing": self.balancing,
            "all_pass": self.all_pass,
            "axioms": [r.as_dict() for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False)


def _show(e: GaussElem) -> str:
    return f"scalar {e.scalar}; matrix {e.q.to_strings()} on legs {list(e.legs)}"


def _check(number, statement, lhs_fn, rhs_fn) -> AxiomResult:
    try:
        lhs, rhs = lhs_fn(), rhs_fn()
    except AlexGaussError as exc:
        return AxiomResult(number, statement, False, error=f"{type(exc).__name__}: {exc}")
    ok = g_equal(lhs, rhs)
    return AxiomResult(number, statement, ok, _show(lhs), _show(rhs))


def _two_leg(scalar, a, b) -> GaussElem:
    return GaussElem(scalar, LaurentMatrix([[a, ZERO], [ZERO, b]]), ("a", "b"))


def xc_verify_axioms(r: RMatrix, kappa=1) -> AxiomReport:
    """Check the five XC axioms for ``(phi(R), kappa)`` inside the Gaussian calculus.

    ``kappa`` defaults to the trivial balancing element.
    """
    k = balancing(kappa)
    k_inv = g_inverse(k)
    label = str(k.scalar) if k.q[0, 0] == 1 else f"({k.scalar}) * phi({k.q[0, 0]})"
    report = AxiomReport(r.m, r.kind, label)

    def ax1_lhs():
        kk = g_compose(kappa_leg(k, 1, 2), kappa_leg(k, 2, 2))
        kk_inv = g_compose(kappa_leg(k, 1, 2, True), kappa_leg(k, 2, 2, True))
        return g_compose(kk, r_leg(r, 1, 2, 2), kk_inv)

    report.results.append(_check(
        1, "R = (k x k) R (k^-1 x k^-1)", ax1_lhs, lambda: r_leg(r, 1, 2, 2)))

    def mu3(first, second):
        e = g_compose(first, second)
        return g_contract_run(e, [1, 2, 3], "a")

    report.results.append(_check(
        2, "mu3(R_13 k_2) = mu3(R_31 k_2^-1)",
        lambda: mu3(r_leg(r, 1, 3, 3), kappa_leg(k, 2, 3)),
        lambda: mu3(r_leg(r, 3, 1, 3), kappa_leg(k, 2, 3, True)),
    ))

    def ax3_lhs():
        e = g_compose(r_leg(r, 1, 5, 5), r_leg(r, 2, 3, 5, inverse=True), kappa_leg(k, 4, 5, True))
        e = g_contract_run(e, [1, 2], "a")
        return g_contract_run(e, [3, 4, 5], "b")

    report.results.append(_check(
        3, "1 x k^-1 = (mu x mu3)(R_15 R_23^-1 k_4^-1)",
        ax3_lhs, lambda: _two_leg(k_inv.scalar, ONE, k_inv.q[0, 0]),
    ))

    def ax4_lhs():
        e = g_compose(r_leg(r, 3, 4, 5, inverse=True), r_leg(r, 1, 5, 5), kappa_leg(k, 2, 5))
        e = g_contract_run(e, [1, 2, 3], "a")
        return g_contract_run(e, [4, 5], "b")

    report.results.append(_check(
        4, "k x 1 = (mu3 x mu)(R_34^-1 R_15 k_2)",
        ax4_lhs, lambda: _two_leg(k.scalar, k.q[0, 0], ONE),
    ))

    yb = xc_yang_baxter(r)
    report.results.append(AxiomResult(
        5, "R_12 R_13 R_23 = R_23 R_13 R_12", yb.holds,
        str(yb.lhs.to_strings()), str(yb.rhs.to_strings()),
    ))
    return report
