"""Sequence-level oracles for the properties decided in :mod:`relfix.analysis`.

These build explicit eventually periodic R-preserving sequences
``prefix + cycle + cycle + ...`` and evaluate the limit definitions on the
sequence values directly.  They share no code with the tail-set procedures.

An eventually periodic sequence has a limit iff its terms are constant over
one period after the prefix, and a double limit over (n, m) iff the values
are constant over period x period.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Optional

from .relation import FiniteRelation, SelfMap
from .space import FiniteDistanceSpace


@dataclass(frozen=True)
class PeriodicSequence:
    prefix: tuple[str, ...]
    cycle: tuple[str, ...]

    def term(self, n: int) -> str:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]

    def head(self, length: int) -> list[str]:
        return [self.term(n) for n in range(length)]

    def tail_indices(self) -> range:
        """One full period of indices past the prefix."""
        start = len(self.prefix)
        return range(start, start + len(self.cycle))


def _closed_walks(succ: dict[str, list[str]], start: str) -> list[tuple[str, ...]]:
    """One shortest closed walk from ``start`` for every reachable visited-set."""
    seen = {(start, frozenset([start])): None}
    queue = deque([(start, frozenset([start]))])
    found: dict[frozenset[str], tuple[str, ...]] = {}
    while queue:
        state = queue.popleft()
        node, visited = state
        for nxt in succ[node]:
            if nxt == start and visited not in found:
                walk = []
                cur: Optional[tuple] = state
                while cur is not None:
                    walk.append(cur[0])
                    cur = seen[cur]
                found[visited] = tuple(reversed(walk))
            new = (nxt, visited | {nxt})
            if new not in seen:
                seen[new] = state
                queue.append(new)
    return list(found.values())


@lru_cache(maxsize=1024)
def _sequences(R: FiniteRelation, Y: frozenset[str]) -> tuple[PeriodicSequence, ...]:
    nodes = [p for p in R.carrier if p in Y]
    succ = {v: [w for w in R.successors[v] if w in Y] for v in nodes}
    out = []
    for start in nodes:
        # A prefix entering the cycle from another point, when one exists.
        lead: Optional[tuple[str, ...]] = None
        for src in nodes:
            if src == start:
                continue
            parent = {src: None}
            queue = deque([src])
            while queue and start not in parent:
                v = queue.popleft()
                for w in succ[v]:
                    if w not in parent:
                        parent[w] = v
                        queue.append(w)
            if start in parent:
                chain = []
                cur = parent[start]
                while cur is not None:
                    chain.append(cur)
                    cur = parent[cur]
                lead = tuple(reversed(chain))
                break
        for cycle in _closed_walks(succ, start):
            out.append(PeriodicSequence((), cycle))
            if lead is not None:
                out.append(PeriodicSequence(lead, cycle))
    return tuple(out)


def periodic_sequences(R: FiniteRelation, Y: Iterable[str]) -> tuple[PeriodicSequence, ...]:
    """Eventually periodic R-preserving sequences in Y, one per (start, visited set) cycle."""
    return _sequences(R, frozenset(Y))


def _limit(values: Iterable) -> tuple[bool, object]:
    vals = set(values)
    if len(vals) == 1:
        return True, vals.pop()
    return False, None


def sequence_limit_value(seq: PeriodicSequence, term: Callable[[int], object]) -> tuple[bool, object]:
    """lim term(n) for n -> infinity along the sequence's period."""
    return _limit(term(n) for n in seq.tail_indices())


def double_limit(space: FiniteDistanceSpace, seq: PeriodicSequence) -> tuple[bool, object]:
    idx = seq.tail_indices()
    return _limit(space.dist(seq.term(n), seq.term(m)) for n, m in product(idx, idx))


def converges_to(space: FiniteDistanceSpace, seq: PeriodicSequence, x: str) -> bool:
    ok, value = sequence_limit_value(seq, lambda n: space.dist(seq.term(n), x))
    return ok and value == space.dist(x, x)


def r_complete(space: FiniteDistanceSpace, R: FiniteRelation, Y: Iterable[str]) -> bool:
    ys = [p for p in space.points if p in set(Y)]
    for seq in periodic_sequences(R, ys):
        cauchy, L = double_limit(space, seq)
        if not cauchy:
            continue
        if not any(converges_to(space, seq, y) and space.dist(y, y) == L for y in ys):
            return False
    return True


def sigma_self_closed(space: FiniteDistanceSpace, R: FiniteRelation, Y: Iterable[str]) -> bool:
    ys = [p for p in space.points if p in set(Y)]
    for seq in periodic_sequences(R, ys):
        for y in ys:
            if not converges_to(space, seq, y):
                continue
            # infinitely many related terms <=> a related term in the period
            if not any((seq.term(n), y) in R.pairs or (y, seq.term(n)) in R.pairs for n in seq.tail_indices()):
                return False
    return True


def r_continuous_like(space: FiniteDistanceSpace, R: FiniteRelation, f: SelfMap) -> bool:
    for seq in periodic_sequences(R, space.points):
        for x in space.points:
            if not converges_to(space, seq, x):
                continue
            fx = f(x)
            ok, value = sequence_limit_value(seq, lambda n: space.dist(f(seq.term(n)), fx))
            if not (ok and value == space.dist(fx, fx)):
                return False
    return True
