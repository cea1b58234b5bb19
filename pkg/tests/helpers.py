"""Shared builders and random generators for the test suite."""

from __future__ import annotations

import random
import string
from fractions import Fraction

from hypothesis import strategies as st

from relfix import FiniteDistanceSpace, FiniteRelation, Instance, SelfMap
from relfix.document import instance_from_document
from relfix import fixtures

X3 = ("a", "b", "c")

EX1_SIGMA = FiniteDistanceSpace.from_pairs(
    X3,
    {("a", "a"): 0, ("b", "b"): 0, ("c", "c"): 2, ("a", "b"): 2, ("a", "c"): 1, ("b", "c"): 1},
)
EX1_P = FiniteDistanceSpace.from_pairs(
    X3, {(x, y): 0 if x == y == "a" else 1 for x in X3 for y in X3}
)
EX2 = FiniteDistanceSpace.from_pairs(
    X3,
    {("a", "a"): 0, ("b", "b"): 0, ("c", "c"): 3, ("a", "b"): 1, ("a", "c"): 2, ("b", "c"): 2},
)
EX2_R = FiniteRelation.of(X3, [("a", "a"), ("b", "b"), ("a", "b")])
EX2_F = SelfMap.from_dict(X3, {"a": "b", "b": "b", "c": "a"})
UNIVERSAL3 = FiniteRelation.universal(X3)


def example2(**kw) -> Instance:
    kw.setdefault("Y", ("a", "b"))
    return Instance(EX2, kw.pop("relation", EX2_R), kw.pop("fmap", EX2_F), **kw)


def corpus() -> dict[str, Instance]:
    """Every bundled fixture that parses to a full instance."""
    out = {}
    for name in fixtures.names():
        doc = fixtures.load(name)
        try:
            out[name] = instance_from_document(doc)
        except ValueError:
            continue
    return out


def labels(n: int) -> tuple[str, ...]:
    return tuple(string.ascii_lowercase[:n])


def random_table(rng: random.Random, n: int, grid=(0, 1, 2, 3)) -> FiniteDistanceSpace:
    """Arbitrary symmetric nonnegative table (may violate any axiom)."""
    pts = labels(n)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = Fraction(rng.choice(grid), rng.choice((1, 2)))
    return FiniteDistanceSpace.from_matrix(pts, rows)


def random_metric_like(rng: random.Random, n: int) -> FiniteDistanceSpace:
    """Off-diagonal values in [2, 4] and diagonal in [0, 4] always satisfy the axioms."""
    pts = labels(n)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = Fraction(rng.randint(0, 8), 2) * rng.choice((0, 1))
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = Fraction(rng.randint(4, 8), 2)
    return FiniteDistanceSpace.from_matrix(pts, rows)


def random_relation(rng: random.Random, carrier: tuple[str, ...], density: float = 0.4) -> FiniteRelation:
    return FiniteRelation(carrier, frozenset((x, y) for x in carrier for y in carrier if rng.random() < density))


def random_map(rng: random.Random, carrier: tuple[str, ...]) -> SelfMap:
    return SelfMap(carrier, tuple(rng.choice(carrier) for _ in carrier))


def f_closure(pairs, f: SelfMap, carrier) -> FiniteRelation:
    """Smallest f-closed relation containing ``pairs``."""
    out = set(pairs)
    todo = list(out)
    while todo:
        x, y = todo.pop()
        img = (f(x), f(y))
        if img not in out:
            out.add(img)
            todo.append(img)
    return FiniteRelation(tuple(carrier), frozenset(out))


@st.composite
def small_instances(draw, max_points: int = 4):
    """Hypothesis strategy: (space, relation, map) on 1..max_points points."""
    n = draw(st.integers(1, max_points))
    pts = labels(n)
    vals = st.sampled_from([Fraction(v, 2) for v in range(0, 7)])
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = draw(vals)
    space = FiniteDistanceSpace.from_matrix(pts, rows)
    cells = [(x, y) for x in pts for y in pts]
    pairs = draw(st.sets(st.sampled_from(cells)))
    images = tuple(draw(st.sampled_from(pts)) for _ in pts)
    return space, FiniteRelation(pts, frozenset(pairs)), SelfMap(pts, images)
