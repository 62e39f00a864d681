"""Seeded oracle suites comparing the Gaussian calculus with the Weyl oracle.

Each suite draws random instances from a ``random.Random`` seeded by the
caller and returns a :class:`SuiteResult`.  The suites are also used by the
test-suite, so instance generators live here.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, List, Sequence

from alexgauss.errors import SingularContractionError
from alexgauss.gaussian import (
    GaussElem,
    bulk_determinant,
    g_bulk,
    g_compose,
    g_contract_pair,
    g_contract_run,
    g_phi,
    g_transpose_bulk,
)
from alexgauss.laurent import ONE, ZERO, LaurentFrac, LaurentMatrix, LaurentPoly
from alexgauss.weyl import Context, w_contract, w_equal, w_from_gauss, w_mul, w_phi


def random_poly(rng: random.Random, terms: int = 2, span: int = 2, coeff: int = 2) -> LaurentPoly:
    return LaurentPoly.from_terms(
        {rng.randint(-span, span): rng.randint(-coeff, coeff) for _ in range(rng.randint(0, terms))}
    )


def random_vanishing(rng: random.Random, **kw) -> LaurentPoly:
    """Random Laurent polynomial with value 0 at ``T = 1``."""
    p = random_poly(rng, **kw)
    return p - sum(p.coeffs)


def random_group_matrix(rng: random.Random, n: int, density: float = 0.5) -> LaurentMatrix:
    """Random ``n x n`` matrix congruent to the identity at ``T = 1``."""
    rows = []
    for r in range(n):
        row = []
        for c in range(n):
            base = ONE if r == c else ZERO
            row.append(base + random_vanishing(rng) if rng.random() < density else base)
        rows.append(row)
    return LaurentMatrix(rows)


def random_sparse_matrix(rng: random.Random, n: int, density: float = 0.4) -> LaurentMatrix:
    """Identity plus sparse small Laurent perturbations (no constraint at ``T = 1``)."""
    rows = []
    for r in range(n):
        row = []
        for c in range(n):
            base = ONE if r == c else ZERO
            row.append(base + random_poly(rng, terms=2, span=2, coeff=1) if rng.random() < density else base)
        rows.append(row)
    return LaurentMatrix(rows)


def random_gauss(rng: random.Random, n: int, legs: Sequence = None) -> GaussElem:
    """Random element ``omega * phi(Q)`` with ``omega(1) = 1`` and ``Q(1) = 1``."""
    legs = tuple(range(1, n + 1)) if legs is None else tuple(legs)
    omega = ONE + random_vanishing(rng, terms=2, span=2, coeff=1)
    if omega.is_zero():
        omega = ONE
    return GaussElem(LaurentFrac.of(omega), random_group_matrix(rng, n), legs)


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    seconds: float = 0.0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f", {self.skipped} skipped" if self.skipped else ""
        return f"{status} {self.name}: {self.passed} passed, {self.failed} failed{extra} ({self.seconds:.2f} s)"


def _run(name: str, count: int, body: Callable[[int], bool]) -> SuiteResult:
    res = SuiteResult(name)
    t0 = time.perf_counter()
    for k in range(count):
        try:
            ok = body(k)
        except SingularContractionError:
            res.skipped += 1
            continue
        if ok:
            res.passed += 1
        else:
            res.failed += 1
            res.failures.append(f"instance {k}")
    res.seconds = time.perf_counter() - t0
    return res


def suite_homomorphism(rng: random.Random, count: int = 50, ctx: Context = Context()) -> SuiteResult:
    """``phi(A) phi(B) = phi(AB)`` in the oracle, for random 2x2 ``A, B``."""
    legs = (1, 2)

    def body(_):
        a, b = random_group_matrix(rng, 2), random_group_matrix(rng, 2)
        lhs = w_mul(w_phi(a, legs, ctx), w_phi(b, legs, ctx))
        ab = g_compose(g_phi(a, legs), g_phi(b, legs))
        return w_equal(lhs, w_from_gauss(ab.scalar, ab.q, legs, ctx))

    return _run("phi is multiplicative", count, body)


def suite_contraction_square(rng: random.Random, count: int = 50, ctx: Context = Context()) -> SuiteResult:
    """Oracle contraction of the expansion equals expansion of the closed-form contraction."""

    def body(_):
        e = random_gauss(rng, 3)
        i, j = rng.sample(e.legs, 2)
        k = rng.choice([i, j, "k"])
        oracle = w_contract(w_from_gauss(e.scalar, e.q, e.legs, ctx), i, j, k)
        c = g_contract_pair(e, i, j, k)
        return w_equal(oracle, w_from_gauss(c.scalar, c.q, c.legs, ctx))

    return _run("contraction square", count, body)


def suite_collapse(rng: random.Random, count: int = 200, max_n: int = 5) -> SuiteResult:
    """Folded scalar equals ``1/det(1 - Q^)``; bulk and transposed bulk agree."""

    def body(_):
        n = rng.randint(2, max_n)
        e = g_phi(random_group_matrix(rng, n, density=0.4))
        det = bulk_determinant(e)
        folded = g_contract_run(e, list(e.legs), "k")
        if det.is_zero():
            return False
        s_bulk, _ = g_bulk(e)
        s_t, _ = g_transpose_bulk(e)
        return folded.scalar == LaurentFrac.of(1) / det and s_bulk == s_t == folded.scalar

    return _run("determinant collapse", count, body)


def run_all(seed: int = 0, truncation: int = 4, degree: int = 6, count: int = 50,
            collapse_count: int = 200) -> List[SuiteResult]:
    ctx = Context(truncation, degree)
    rng = random.Random(seed)
    return [
        suite_homomorphism(rng, count, ctx),
        suite_contraction_square(rng, count, ctx),
        suite_collapse(rng, collapse_count),
    ]
