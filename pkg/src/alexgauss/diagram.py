"""Upward long-knot diagrams and PD-code import.

A long knot with ``n`` crossings has edges ``1..2n+1`` numbered along the
orientation.  Each crossing records its sign and the two incoming edges; the
outgoing edges are the successors ``i+1`` and ``j+1``.

PD codes follow the usual convention: a 4-tuple ``(a, b, c, d)`` lists the
edges around a crossing counterclockwise starting from the incoming
understrand, so ``c = a + 1`` (cyclically).  The overstrand runs ``d -> b`` on
positive crossings and ``b -> d`` on negative ones.
"""
from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

from alexgauss.errors import LabelingError, ParseError


@dataclass(frozen=True)
class Crossing:
    sign: int
    over_in: int
    under_in: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise LabelingError(f"crossing sign must be +1 or -1, got {self.sign!r}")
        if self.over_in == self.under_in:
            raise LabelingError(f"over and under strands share edge {self.over_in}")

    @property
    def over_out(self) -> int:
        return self.over_in + 1

    @property
    def under_out(self) -> int:
        return self.under_in + 1

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.sign, self.over_in, self.under_in)


@dataclass(frozen=True)
class UpwardDiagram:
    crossings: Tuple[Crossing, ...]

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def edge_count(self) -> int:
        return 2 * self.n + 1

    def as_tuples(self) -> List[Tuple[int, int, int]]:
        return [c.as_tuple() for c in self.crossings]

    def __iter__(self):
        return iter(self.crossings)

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class PDCode:
    tuples: Tuple[Tuple[int, int, int, int], ...]

    def __init__(self, tuples: Iterable[Sequence[int]]):
        out = []
        for t in tuples:
            t = tuple(t)
            if len(t) != 4:
                raise ParseError(f"PD tuple {t} does not have four entries")
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in t):
                raise ParseError(f"PD tuple {t} has non-integer labels")
            out.append(t)
        object.__setattr__(self, "tuples", tuple(out))
        counts = Counter(x for t in self.tuples for x in t)
        m = 2 * len(self.tuples)
        if set(counts) != set(range(1, m + 1)) or any(v != 2 for v in counts.values()):
            raise ParseError(f"PD labels must be 1..{m}, each appearing twice")


CrossingLike = Union[Crossing, Sequence[int]]


def diag_validate(crossings: Iterable[CrossingLike]) -> UpwardDiagram:
    xs = []
    for c in crossings:
        if not isinstance(c, Crossing):
            if len(c) != 3:
                raise LabelingError(f"crossing {c!r} is not (sign, over_in, under_in)")
            c = Crossing(*c)
        xs.append(c)
    n = len(xs)
    incoming = Counter()
    for c in xs:
        incoming[c.over_in] += 1
        incoming[c.under_in] += 1
    dup = sorted(e for e, v in incoming.items() if v > 1)
    if dup:
        raise LabelingError(f"edges {dup} enter more than one crossing slot")
    want = set(range(1, 2 * n + 1))
    if set(incoming) != want:
        extra = sorted(set(incoming) - want)
        missing = sorted(want - set(incoming))
        raise LabelingError(f"incoming edges must be exactly 1..{2 * n}; extra {extra}, missing {missing}")
    return UpwardDiagram(tuple(xs))


def _succ(e: int, m: int) -> int:
    return e % m + 1


def diag_from_pd(pd: Union[PDCode, Iterable[Sequence[int]]]) -> UpwardDiagram:
    """Convert a closed-knot PD code to an upward long diagram.

    The knot is cut just before edge 1, so incoming edge labels carry over and
    the tail leaving the last crossing becomes edge ``2n+1``.
    """
    if not isinstance(pd, PDCode):
        pd = PDCode(pd)
    m = 2 * len(pd.tuples)
    out = []
    for a, b, c, d in pd.tuples:
        if c != _succ(a, m):
            raise ParseError(f"X[{a},{b},{c},{d}]: understrand {a} -> {c} is not consecutive")
        pos = b == _succ(d, m)
        neg = d == _succ(b, m)
        if pos and neg:
            # two edges only: either reading is consistent, keep the over edge distinct from a
            pos = d != a
        if pos:
            out.append(Crossing(1, d, a))
        elif neg:
            out.append(Crossing(-1, b, a))
        else:
            raise ParseError(f"X[{a},{b},{c},{d}]: overstrand {b},{d} is not consecutive")
    try:
        return diag_validate(out)
    except LabelingError as exc:
        raise ParseError(f"PD code does not describe a single long knot: {exc}") from exc


def diag_mirror(d: UpwardDiagram) -> UpwardDiagram:
    return UpwardDiagram(tuple(Crossing(-c.sign, c.over_in, c.under_in) for c in d.crossings))


# -- text formats -------------------------------------------------------------

def crossings_from_json(text: str) -> UpwardDiagram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("crossings"), list):
        raise ParseError('expected an object with a "crossings" list')
    xs = []
    for i, item in enumerate(data["crossings"]):
        if not isinstance(item, dict):
            raise ParseError(f"crossing #{i} is not an object")
        try:
            vals = [item[k] for k in ("sign", "over_in", "under_in")]
        except KeyError as exc:
            raise ParseError(f"crossing #{i} lacks field {exc}") from None
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in vals):
            raise ParseError(f"crossing #{i} has non-integer fields")
        xs.append(vals)
    try:
        return diag_validate(xs)
    except LabelingError as exc:
        raise ParseError(str(exc)) from exc


def crossings_to_json(d: UpwardDiagram) -> str:
    return json.dumps(
        {"crossings": [{"sign": c.sign, "over_in": c.over_in, "under_in": c.under_in} for c in d]}
    )


_PD_TOKEN = re.compile(r"X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")


def pd_from_text(text: str) -> PDCode:
    tuples = []
    pos = 0
    for m in _PD_TOKEN.finditer(text):
        gap = text[pos:m.start()]
        if gap.strip():
            raise ParseError(f"unexpected text {gap.strip()!r}; expected X[a,b,c,d] tokens")
        tuples.append(tuple(int(g) for g in m.groups()))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError(f"unexpected text {text[pos:].strip()!r}; expected X[a,b,c,d] tokens")
    return PDCode(tuples)


def pd_to_text(pd: PDCode) -> str:
    return " ".join(f"X[{a},{b},{c},{d}]" for a, b, c, d in pd.tuples)
