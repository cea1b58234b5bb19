"""Decision procedures for the sequence-quantified properties on finite carriers.

Every infinite R-preserving sequence over a finite set eventually stays
inside, and visits infinitely often exactly, some set S of points whose
induced R-subdigraph is strongly connected (a singleton needs a self-loop).
Conversely every such S is the tail of some R-preserving sequence.  The
prefix never matters for limits, so Cauchy-ness, convergence,
R-completeness, self-closedness and the continuity notions reduce to
finite checks over these tail sets:

* the sequence is Cauchy iff the distance is constant (= L) on S x S;
* it converges to x iff d(s, x) = d(x, x) for every s in S.

Tail sets are enumerated inside strongly connected components, so the cost
is exponential only in the size of the largest component.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from .relation import FiniteRelation, SelfMap
from .space import FiniteDistanceSpace


@dataclass(frozen=True)
class TailSet:
    members: frozenset[str]
    cauchy_value: Optional[Fraction] = None

    def sorted(self, carrier: tuple[str, ...]) -> list[str]:
        return [p for p in carrier if p in self.members]


@dataclass(frozen=True)
class PropertyReport:
    holds: bool
    # (tail, point) explaining a failure; point is None for R-completeness.
    witness: Optional[tuple[TailSet, Optional[str]]] = None


def _sccs(nodes: tuple[str, ...], succ: dict[str, list[str]]) -> list[list[str]]:
    """Tarjan's algorithm, iterative."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    out: list[list[str]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            recurse = False
            for j in range(i, len(succ[v])):
                w = succ[v][j]
                if w not in index:
                    work.append((v, j + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return out


def _strongly_connected(members: list[str], pairs: frozenset) -> bool:
    if len(members) == 1:
        return (members[0], members[0]) in pairs
    inside = set(members)

    def reach(start: str, forward: bool) -> set[str]:
        seen = {start}
        todo = [start]
        while todo:
            v = todo.pop()
            for w in inside:
                edge = (v, w) if forward else (w, v)
                if w not in seen and edge in pairs:
                    seen.add(w)
                    todo.append(w)
        return seen

    return len(reach(members[0], True)) == len(inside) and len(reach(members[0], False)) == len(inside)


def _cauchy_value(space: FiniteDistanceSpace, members: Iterable[str]) -> Optional[Fraction]:
    members = list(members)
    value = space.dist(members[0], members[0])
    for s in members:
        for t in members:
            if space.dist(s, t) != value:
                return None
    return value


@lru_cache(maxsize=4096)
def _tail_members(R: FiniteRelation, Y: frozenset[str]) -> tuple[frozenset[str], ...]:
    nodes = tuple(p for p in R.carrier if p in Y)
    succ = {v: [w for w in R.successors[v] if w in Y] for v in nodes}
    order = {p: i for i, p in enumerate(R.carrier)}
    found = []
    for comp in _sccs(nodes, succ):
        comp.sort(key=order.__getitem__)
        for mask in range(1, 1 << len(comp)):
            members = [comp[i] for i in range(len(comp)) if mask >> i & 1]
            if _strongly_connected(members, R.pairs):
                found.append(frozenset(members))
    found.sort(key=lambda s: (len(s), sorted(order[p] for p in s)))
    return tuple(found)


def realizable_tail_sets(
    R: FiniteRelation, Y: Iterable[str], space: Optional[FiniteDistanceSpace] = None
) -> list[TailSet]:
    """All tail sets of R-preserving sequences that stay in Y.

    With ``space`` given, each tail carries its Cauchy value when the
    distance is constant on S x S.
    """
    members = _tail_members(R, frozenset(Y))
    if space is None:
        return [TailSet(m) for m in members]
    return [TailSet(m, _cauchy_value(space, m)) for m in members]


@lru_cache(maxsize=4096)
def _limits(space: FiniteDistanceSpace, S: frozenset[str], within: tuple[str, ...]) -> frozenset[str]:
    return frozenset(x for x in within if all(space.dist(s, x) == space.dist(x, x) for s in S))


def limits_of_tail(
    space: FiniteDistanceSpace, S: Iterable[str], within: Optional[Iterable[str]] = None
) -> frozenset[str]:
    """Points x with d(s, x) = d(x, x) for all s in S.

    These are the limits of any sequence whose tail set is S; there may be
    several.  ``within`` narrows the candidates (default: the whole carrier).
    """
    S = frozenset(S)
    if not S:
        raise ValueError("tail set must be nonempty")
    cands = space.points if within is None else space.subset(within)
    return _limits(space, S, cands)


def check_r_completeness(space: FiniteDistanceSpace, R: FiniteRelation, Y: Iterable[str]) -> PropertyReport:
    """Every R-preserving Cauchy sequence in Y has a limit y in Y with d(y, y) = L."""
    return _r_completeness(space, R, frozenset(Y))


@lru_cache(maxsize=4096)
def _r_completeness(space: FiniteDistanceSpace, R: FiniteRelation, Y: frozenset[str]) -> PropertyReport:
    ys = space.subset(Y)
    for tail in realizable_tail_sets(R, Y, space):
        L = tail.cauchy_value
        if L is None:
            continue
        if not any(
            space.dist(y, y) == L and all(space.dist(s, y) == L for s in tail.members) for y in ys
        ):
            return PropertyReport(False, (tail, None))
    return PropertyReport(True)


def check_sigma_self_closed(space: FiniteDistanceSpace, R: FiniteRelation, Y: Iterable[str]) -> PropertyReport:
    """Self-closedness of R|_Y inside the subspace (Y, d): limits are taken in Y."""
    return _self_closed(space, R, frozenset(Y))


@lru_cache(maxsize=4096)
def _self_closed(space: FiniteDistanceSpace, R: FiniteRelation, Y: frozenset[str]) -> PropertyReport:
    ys = space.subset(Y)
    pairs = R.pairs
    for tail in realizable_tail_sets(R, Y):
        for x in sorted(limits_of_tail(space, tail.members, ys), key=space.index.__getitem__):
            if not any((s, x) in pairs or (x, s) in pairs for s in tail.members):
                return PropertyReport(False, (tail, x))
    return PropertyReport(True)


def check_r_continuity_like(space: FiniteDistanceSpace, R: FiniteRelation, f: SelfMap) -> PropertyReport:
    d = space.dist
    for tail in realizable_tail_sets(R, space.points):
        for x in sorted(limits_of_tail(space, tail.members), key=space.index.__getitem__):
            fx = f(x)
            target = d(fx, fx)
            if any(d(f(s), fx) != target for s in tail.members):
                return PropertyReport(False, (tail, x))
    return PropertyReport(True)


def check_continuity_like(space: FiniteDistanceSpace, f: SelfMap) -> PropertyReport:
    return check_r_continuity_like(space, FiniteRelation.universal(space.points), f)


@dataclass(frozen=True)
class Walk:
    """One simulated R-preserving walk and the verdicts read off its tail window."""

    sequence: tuple[str, ...]
    stuck: bool
    stabilized: bool
    tail: Optional[frozenset[str]] = None
    cauchy_value: Optional[Fraction] = None
    limits: frozenset[str] = frozenset()


def _window_is_bottom_component(window: set[str], R: FiniteRelation, Y: set[str]) -> bool:
    # Strongly connected and closed under successors inside Y: the walk can
    # never leave, so the window is its whole infinite tail.
    for v in window:
        for w in R.successors[v]:
            if w in Y and w not in window:
                return False
    members = list(window)
    if len(members) == 1:
        return (members[0], members[0]) in R.pairs
    start = members[0]
    fwd, todo = {start}, [start]
    while todo:
        v = todo.pop()
        for w in R.successors[v]:
            if w in window and w not in fwd:
                fwd.add(w)
                todo.append(w)
    bwd, todo = {start}, [start]
    while todo:
        v = todo.pop()
        for w in window:
            if (w, v) in R.pairs and w not in bwd:
                bwd.add(w)
                todo.append(w)
    return fwd == window == bwd


def simulate_walks(
    space: FiniteDistanceSpace,
    R: FiniteRelation,
    Y: Iterable[str],
    count: int,
    horizon: int,
    seed: int = 0,
) -> list[Walk]:
    """Random R-preserving walks inside Y with empirical tail verdicts.

    Each walk starts at a uniform point of Y and moves to a uniform
    successor in Y; it stops early when no successor exists.  The final
    third of a full-length walk is its tail window.  Verdicts are only
    reported for walks whose window is a closed strongly connected piece
    of R|_Y, i.e. walks that have stabilized.
    """
    if count < 1 or horizon < 1:
        raise ValueError("count and horizon must be >= 1")
    ys = space.subset(Y)
    yset = set(ys)
    succ = {v: [w for w in R.successors[v] if w in yset] for v in ys}
    rng = random.Random(seed)
    d = space.dist
    walks = []
    for _ in range(count):
        seq = [rng.choice(ys)]
        stuck = False
        while len(seq) < horizon:
            options = succ[seq[-1]]
            if not options:
                stuck = True
                break
            seq.append(rng.choice(options))
        if stuck:
            walks.append(Walk(tuple(seq), True, False))
            continue
        window_seq = seq[len(seq) - max(1, len(seq) // 3):]
        window = set(window_seq)
        if not _window_is_bottom_component(window, R, yset):
            walks.append(Walk(tuple(seq), False, False))
            continue
        values = {d(a, b) for a in window_seq for b in window_seq}
        cauchy = values.pop() if len(values) == 1 else None
        limits = frozenset(y for y in ys if all(d(a, y) == d(y, y) for a in window_seq))
        walks.append(Walk(tuple(seq), False, True, frozenset(window), cauchy, limits))
    return walks
