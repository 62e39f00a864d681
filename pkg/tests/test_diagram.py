import itertools
import random

import pytest

from corpus import PD_FIXTURES, TREFOIL, braid_to_crossings, braid_to_pd, random_braid_knot
from alexgauss.diagram import (
    Crossing,
    PDCode,
    crossings_from_json,
    crossings_to_json,
    diag_from_pd,
    diag_mirror,
    diag_validate,
    pd_from_text,
    pd_to_text,
)
from alexgauss.errors import LabelingError, ParseError


def test_trefoil_is_valid():
    d = diag_validate(TREFOIL)
    assert d.n == 3
    assert d.edge_count == 7
    assert d.as_tuples() == TREFOIL
    assert [c.over_out for c in d] == [2, 6, 4]


def test_empty_diagram_is_the_unknot():
    d = diag_validate([])
    assert d.n == 0 and d.edge_count == 1


@pytest.mark.parametrize("bad", [
    [(1, 1, 1)],
    [(2, 1, 2)],
    [(1, 1, 2), (1, 1, 3)],
    [(1, 1, 5)],
    [(1, 1, 2), (1, 3, 5)],
    [(1, 2)],
])
def test_invalid_lists(bad):
    with pytest.raises(LabelingError):
        diag_validate(bad)


@pytest.mark.parametrize("n", [1, 2])
def test_exhaustive_small_validation(n):
    labels = range(0, 2 * n + 3)
    accepted = 0
    for slots in itertools.product(labels, repeat=2 * n):
        for signs in itertools.product((1, -1), repeat=n):
            xs = [(signs[c], slots[2 * c], slots[2 * c + 1]) for c in range(n)]
            ok = sorted(slots) == list(range(1, 2 * n + 1))
            if ok:
                assert diag_validate(xs).as_tuples() == xs
                accepted += 1
            else:
                with pytest.raises(LabelingError):
                    diag_validate(xs)
    assert accepted == 2**n * len(list(itertools.permutations(range(2 * n))))


# -- PD codes ---------------------------------------------------------------------

def test_pd_trefoil_example():
    assert diag_from_pd(PD_FIXTURES["3_1"]).as_tuples() == [(1, 4, 1), (1, 6, 3), (1, 2, 5)]
    assert diag_from_pd(PD_FIXTURES["3_1_alt"]).as_tuples() == [(-1, 4, 1), (-1, 6, 3), (-1, 2, 5)]


@pytest.mark.parametrize("name", sorted(PD_FIXTURES))
def test_pd_fixtures_parse(name):
    d = diag_from_pd(PD_FIXTURES[name])
    assert d.n == len(PD_FIXTURES[name])


def test_pd_single_crossing_tie():
    # with two edges both overstrand readings are consistent
    d = diag_from_pd([(1, 2, 2, 1)])
    assert d.as_tuples() == [(-1, 2, 1)]
    d = diag_from_pd([(2, 1, 1, 2)])
    assert d.n == 1


@pytest.mark.parametrize("pd", [
    [(1, 2, 3, 4)],
    [(1, 4, 3, 5), (2, 6, 4, 5)],
    [(1, 5, 3, 4), (3, 1, 4, 6), (5, 3, 6, 2)],
    [(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 7)],
])
def test_pd_errors(pd):
    with pytest.raises(ParseError):
        diag_from_pd(pd)


def test_pd_needs_four_integer_entries():
    with pytest.raises(ParseError):
        PDCode([(1, 2, 3)])
    with pytest.raises(ParseError):
        PDCode([(1, 2, 2.0, 1)])


def test_braid_pd_matches_direct_crossings():
    rng = random.Random(41)
    for _ in range(60):
        word, strands = random_braid_knot(rng)
        direct = diag_validate(braid_to_crossings(word, strands))
        assert diag_from_pd(braid_to_pd(word, strands)) == direct


# -- text formats -------------------------------------------------------------------

def test_pd_text_roundtrip():
    pd = PDCode(PD_FIXTURES["4_1"])
    assert pd_from_text(pd_to_text(pd)) == pd
    assert pd_from_text("X[1, 5, 2, 4]  X[3,1,4,6]\nX[ 5,3,6,2 ]").tuples == tuple(PD_FIXTURES["3_1"])


@pytest.mark.parametrize("text", ["X[1,2,3]", "Y[1,2,2,1]", "X[1,2,2,1] junk", "X[1,2,2,1],"])
def test_pd_text_errors(text):
    with pytest.raises(ParseError):
        pd_from_text(text)


def test_json_roundtrip():
    d = diag_validate(TREFOIL)
    assert crossings_from_json(crossings_to_json(d)) == d


@pytest.mark.parametrize("text", [
    "not json",
    "[]",
    '{"crossings": 3}',
    '{"crossings": [1]}',
    '{"crossings": [{"sign": 1, "over_in": 1}]}',
    '{"crossings": [{"sign": 1, "over_in": 1, "under_in": "2"}]}',
    '{"crossings": [{"sign": 1, "over_in": 1, "under_in": 3}]}',
])
def test_json_errors(text):
    with pytest.raises(ParseError):
        crossings_from_json(text)


def test_mirror_flips_signs_only():
    d = diag_validate(TREFOIL)
    m = diag_mirror(d)
    assert [c.sign for c in m] == [-1, -1, -1]
    assert [(c.over_in, c.under_in) for c in m] == [(c.over_in, c.under_in) for c in d]
    assert diag_mirror(m) == d


def test_crossing_validation():
    with pytest.raises(LabelingError):
        Crossing(0, 1, 2)
    with pytest.raises(LabelingError):
        Crossing(1, 3, 3)
