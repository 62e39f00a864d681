import random

import pytest
import sympy

from alexgauss.alexander import gaussian_element, stitch_element
from alexgauss.diagram import diag_validate
from alexgauss.errors import ContextError, DimensionError, SingularContractionError
from alexgauss.gaussian import (
    ContractionPlan,
    GaussElem,
    apply_plan,
    bulk_determinant,
    g_bulk,
    g_compose,
    g_contract_pair,
    g_contract_run,
    g_embed,
    g_equal,
    g_identity,
    g_inverse,
    g_permute,
    g_phi,
    g_relabel,
    g_transpose_bulk,
)
from alexgauss.laurent import ONE, ZERO, LaurentFrac, LaurentMatrix, T, lp_normalize, parse_poly
from alexgauss.selftest import random_gauss, random_group_matrix
from alexgauss.weyl import Context, w_contract, w_equal, w_from_gauss

M = LaurentMatrix([[T, ZERO], [ONE - T * T, T]])
TREFOIL = [(1, 1, 4), (1, 5, 2), (1, 3, 6)]
CTX = Context(4, 6)


def mat(rows):
    return LaurentMatrix.parse(rows)


# -- construction ------------------------------------------------------------------

def test_embed_example():
    e = g_embed(g_phi(M), {1: 1, 2: 2}, 3)
    assert e.q == mat([["T", "0", "0"], ["1 - T^2", "T", "0"], ["0", "0", "1"]])
    assert e.legs == (1, 2, 3)


def test_embed_flipped_slots():
    e = g_embed(g_phi(M), {1: 3, 2: 1}, 3)
    assert e.q == mat([["T", "0", "1 - T^2"], ["0", "1", "0"], ["0", "0", "T"]])


@pytest.mark.parametrize("positions, total", [({1: 1, 2: 1}, 3), ({1: 1, 2: 4}, 3), ({1: 1}, 3)])
def test_embed_errors(positions, total):
    with pytest.raises(DimensionError):
        g_embed(g_phi(M), positions, total)


def test_compose_example():
    e12 = g_embed(g_phi(M), {1: 1, 2: 2}, 3)
    e23 = g_embed(g_phi(M), {1: 2, 2: 3}, 3)
    assert g_compose(e12, e23).q == e12.q @ e23.q
    with pytest.raises(ContextError):
        g_compose(e12, g_identity((1, 2)))


def test_inverse_roundtrip():
    rng = random.Random(1)
    for _ in range(20):
        e = random_gauss(rng, 3)
        assert g_equal(g_compose(e, g_inverse(e)), g_identity(e.legs))


def test_permute_and_relabel():
    e = g_phi(M, ("a", "b"))
    p = g_permute(e, ("b", "a"))
    assert p.q == mat([["T", "1 - T^2"], ["0", "T"]])
    assert g_equal(e, p)
    assert g_relabel(e, {"a": "z"}).legs == ("z", "b")


def test_elem_validation():
    with pytest.raises(DimensionError):
        GaussElem(1, LaurentMatrix.identity(2), (1,))
    with pytest.raises(DimensionError):
        GaussElem(1, LaurentMatrix.identity(2), (1, 1))
    with pytest.raises(DimensionError):
        GaussElem(0, LaurentMatrix.identity(1), (1,))


# -- the stitching closed form -------------------------------------------------------

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23)


def test_stitching_closed_form_on_prime_monomials():
    alpha, beta, theta, gamma, delta, eps, phi, psi, xi = (T**p for p in PRIMES)
    e = GaussElem(1, LaurentMatrix([[alpha, beta, theta], [gamma, delta, eps], [phi, psi, xi]]), (1, 2, 3))
    out = g_contract_pair(e, 1, 2, "k")
    d = LaurentFrac(ONE, ONE - gamma)
    assert out.legs == ("k", 3)
    assert out.scalar == d
    want = [[beta + alpha * delta * d, theta + alpha * eps * d], [psi + phi * delta * d, xi + phi * eps * d]]
    for r in range(2):
        for c in range(2):
            assert LaurentFrac.of(out.q[r, c]) == want[r][c]


def _sym_run2(q):
    """Two-leg run (1, 2) contracted by the Schur-complement route, in sympy."""
    b = q[:2, :2] - sympy.eye(2)
    mn = sympy.Matrix([[0, 1], [0, 0]])
    s = sympy.eye(2) - mn * b
    sinv = s.inv()
    one = sympy.Matrix([[1, 1]])
    kk = 1 + (one * b * sinv * sympy.Matrix([1, 1]))[0]
    row = (one * (sympy.eye(2) + b * sinv * mn) * q[:2, 2:])[0]
    col = (q[2:, :2] * sinv * sympy.Matrix([1, 1]))[0]
    corner = q[2, 2] + (q[2:, :2] * sinv * mn * q[:2, 2:])[0]
    return 1 / s.det(), sympy.Matrix([[kk, row], [col, corner]])


def test_stitching_closed_form_symbolic():
    a, b, th, g, d, e, f, p, x = sympy.symbols("alpha beta theta gamma delta epsilon phi psi Xi")
    q = sympy.Matrix([[a, b, th], [g, d, e], [f, p, x]])
    scalar, out = _sym_run2(q)
    assert sympy.simplify(scalar - 1 / (1 - g)) == 0
    want = sympy.Matrix([
        [b + a * d / (1 - g), th + a * e / (1 - g)],
        [p + f * d / (1 - g), x + f * e / (1 - g)],
    ])
    assert sympy.simplify(out - want) == sympy.zeros(2, 2)


def test_stitching_singular():
    e = GaussElem(1, LaurentMatrix([[ONE, ZERO], [ONE, ONE]]), (1, 2))
    with pytest.raises(SingularContractionError):
        g_contract_pair(e, 1, 2, "k")


def test_contract_pair_errors():
    e = g_identity((1, 2, 3))
    with pytest.raises(DimensionError):
        g_contract_pair(e, 1, 1, "k")
    with pytest.raises(DimensionError):
        g_contract_pair(e, 1, 2, 3)
    with pytest.raises(DimensionError):
        g_contract_pair(e, 1, 9, "k")


# -- the trefoil chain --------------------------------------------------------------

def test_trefoil_chain():
    e = stitch_element(diag_validate(TREFOIL))
    trace = []
    plan = ContractionPlan.pairwise([(1, 2, 1), (4, 5, 2), (1, 3, 1), (2, 6, 2), (1, 2, 1)])
    out = apply_plan(e, plan, trace)
    assert trace[1].block((1, 2)) == mat([["T^2", "T - T^3"], ["T - T^3", "1 - T^2 + T^4"]])
    assert trace[3].legs == (1, 2)
    assert trace[3].q == mat([["T - T^3 + T^5", "T^2 - T^4"], ["1 - T^2 + T^4 - T^6", "T - T^3 + T^5"]])
    assert out.legs == (1,)
    assert out.scalar == LaurentFrac(ONE, parse_poly("T^2 - T^4 + T^6"))
    assert all(t.scalar == 1 for t in trace[:4])


def test_plan_validation():
    plan = ContractionPlan([((1, 2), 1), ((1, 9), 2)])
    with pytest.raises(DimensionError):
        plan.validate((1, 2, 3))
    with pytest.raises(DimensionError):
        ContractionPlan([((1, 2), 3)]).validate((1, 2, 3))
    assert ContractionPlan.descending((1, 2, 3), 1).steps == (((3, 2, 1), 1),)


# -- runs, bulk, oracle ------------------------------------------------------------------

def test_run_methods_agree():
    rng = random.Random(2)
    for _ in range(60):
        n = rng.randint(2, 5)
        e = random_gauss(rng, n)
        legs = rng.sample(e.legs, rng.randint(2, n))
        try:
            a = g_contract_run(e, legs, "k", method="fold")
        except SingularContractionError:
            with pytest.raises(SingularContractionError):
                g_contract_run(e, legs, "k", method="wform")
            continue
        assert g_equal(a, g_contract_run(e, legs, "k", method="wform"))


def test_bulk_matches_transposed_bulk_and_fold():
    rng = random.Random(3)
    for _ in range(60):
        e = g_phi(random_group_matrix(rng, rng.randint(2, 5), density=0.4))
        det = bulk_determinant(e)
        s_bulk, res_bulk = g_bulk(e)
        s_t, _ = g_transpose_bulk(e)
        folded = g_contract_run(e, list(e.legs), e.legs[0])
        assert s_bulk == s_t == folded.scalar == LaurentFrac.of(1) / det
        assert g_equal(res_bulk, folded)


def test_disjoint_contractions_commute():
    rng = random.Random(4)
    for _ in range(30):
        e = random_gauss(rng, 5)
        a = g_contract_pair(g_contract_pair(e, 1, 2, "k"), 4, 5, "m")
        b = g_contract_pair(g_contract_pair(e, 4, 5, "m"), 1, 2, "k")
        assert g_equal(a, b)


def test_contraction_permutation_equivariance():
    rng = random.Random(5)
    sigma = {1: "c", 2: "a", 3: "b", 4: "d", "k": "z"}
    for _ in range(30):
        e = random_gauss(rng, 4)
        lhs = g_relabel(g_contract_pair(e, 2, 4, "k"), sigma)
        renamed = g_permute(g_relabel(e, sigma), ("d", "b", "a", "c"))
        assert g_equal(lhs, g_contract_pair(renamed, "a", "d", "z"))


def test_oracle_square():
    rng = random.Random(6)
    for _ in range(25):
        e = random_gauss(rng, 3)
        i, j = rng.sample(e.legs, 2)
        oracle = w_contract(w_from_gauss(e.scalar, e.q, e.legs, CTX), i, j, "k")
        c = g_contract_pair(e, i, j, "k")
        assert w_equal(oracle, w_from_gauss(c.scalar, c.q, c.legs, CTX))


def _wrong_pair(e, i, j, k):
    # plausible slip: gamma read from Q[i][j] instead of Q[j][i]
    q = e.q
    pi, pj = e.index(i), e.index(j)
    swapped = [list(r) for r in q.entries]
    swapped[pi][pj], swapped[pj][pi] = q[pj, pi], q[pi, pj]
    return g_contract_pair(GaussElem(e.scalar, LaurentMatrix(swapped), e.legs), i, j, k)


def test_oracle_rejects_a_wrong_formula():
    rng = random.Random(7)
    caught = 0
    for _ in range(10):
        e = random_gauss(rng, 3)
        if e.q[1, 0] == e.q[0, 1]:
            continue
        oracle = w_contract(w_from_gauss(e.scalar, e.q, e.legs, CTX), 1, 2, "k")
        bad = _wrong_pair(e, 1, 2, "k")
        caught += not w_equal(oracle, w_from_gauss(bad.scalar, bad.q, bad.legs, CTX))
    assert caught > 0


def test_trefoil_gaussian_bulk():
    e = gaussian_element(diag_validate(TREFOIL))
    assert e.size == 8
    scalar, _ = g_transpose_bulk(e)
    inv = scalar.inverse()
    assert inv.is_poly()
    assert lp_normalize(inv.num) == lp_normalize(parse_poly("T^2 - T^4 + T^6"))
