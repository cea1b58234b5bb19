"""Binary relations and self-maps on a finite carrier.

Queries that can fail return a :class:`Verdict` ``(holds, witness)`` so the
caller gets the offending pair without a second search.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Mapping, NamedTuple, Optional, Sequence

Pair = tuple[str, str]


class Verdict(NamedTuple):
    holds: bool
    witness: Any = None


class RelationError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteRelation:
    carrier: tuple[str, ...]
    pairs: frozenset[Pair]

    def __post_init__(self) -> None:
        known = set(self.carrier)
        for x, y in self.pairs:
            if x not in known or y not in known:
                raise RelationError(f"pair ({x}, {y}) leaves the carrier {self.carrier!r}")

    @classmethod
    def of(cls, carrier: Sequence[str], pairs: Iterable[Sequence[str]]) -> FiniteRelation:
        return cls(tuple(carrier), frozenset((x, y) for x, y in pairs))

    @classmethod
    def universal(cls, carrier: Sequence[str]) -> FiniteRelation:
        carrier = tuple(carrier)
        return cls(carrier, frozenset((x, y) for x in carrier for y in carrier))

    @classmethod
    def diagonal(cls, carrier: Sequence[str]) -> FiniteRelation:
        carrier = tuple(carrier)
        return cls(carrier, frozenset((x, x) for x in carrier))

    def __contains__(self, pair: object) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    @cached_property
    def successors(self) -> dict[str, tuple[str, ...]]:
        """Out-neighbours of each point, in carrier order."""
        return {x: tuple(y for y in self.carrier if (x, y) in self.pairs) for x in self.carrier}

    def sorted_pairs(self) -> list[Pair]:
        idx = {p: i for i, p in enumerate(self.carrier)}
        return sorted(self.pairs, key=lambda p: (idx[p[0]], idx[p[1]]))

    def restrict(self, subset: Iterable[str]) -> FiniteRelation:
        """R|_D: keep the pairs with both endpoints in ``subset``."""
        keep = set(subset)
        return FiniteRelation(self.carrier, frozenset(p for p in self.pairs if p[0] in keep and p[1] in keep))

    def is_universal(self) -> bool:
        return len(self.pairs) == len(self.carrier) ** 2


@dataclass(frozen=True)
class SelfMap:
    carrier: tuple[str, ...]
    images: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.images) != len(self.carrier):
            raise RelationError("a self-map needs exactly one image per point")
        known = set(self.carrier)
        for x, fx in zip(self.carrier, self.images):
            if fx not in known:
                raise RelationError(f"f({x}) = {fx} is not in the carrier")

    @classmethod
    def from_dict(cls, carrier: Sequence[str], mapping: Mapping[str, str]) -> SelfMap:
        carrier = tuple(carrier)
        missing = [x for x in carrier if x not in mapping]
        if missing:
            raise RelationError(f"map is not total: no image for {missing}")
        extra = set(mapping) - set(carrier)
        if extra:
            raise RelationError(f"map defined on unknown points {sorted(extra)}")
        return cls(carrier, tuple(mapping[x] for x in carrier))

    @classmethod
    def identity(cls, carrier: Sequence[str]) -> SelfMap:
        return cls(tuple(carrier), tuple(carrier))

    @cached_property
    def _table(self) -> dict[str, str]:
        return dict(zip(self.carrier, self.images))

    def __call__(self, x: str) -> str:
        return self._table[x]

    def as_dict(self) -> dict[str, str]:
        return dict(self._table)

    def image(self) -> tuple[str, ...]:
        """f(X) in carrier order."""
        hit = set(self.images)
        return tuple(x for x in self.carrier if x in hit)


@dataclass(frozen=True)
class Path:
    nodes: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.nodes) - 1


def symmetrize(R: FiniteRelation) -> FiniteRelation:
    return FiniteRelation(R.carrier, R.pairs | frozenset((y, x) for x, y in R.pairs))


def _ordered_pairs(R: FiniteRelation, D: Iterable[str]) -> list[Pair]:
    """Unordered pairs of D (diagonal included), in carrier order."""
    wanted = set(D)
    unknown = wanted - set(R.carrier)
    if unknown:
        raise RelationError(f"points {sorted(unknown)} are not in the carrier")
    pts = [p for p in R.carrier if p in wanted]
    return [(x, y) for i, x in enumerate(pts) for y in pts[i:]]


def is_complete(R: FiniteRelation, D: Iterable[str]) -> Verdict:
    """Every x, y in D (x = y included) is related one way or the other."""
    for x, y in _ordered_pairs(R, D):
        if (x, y) not in R.pairs and (y, x) not in R.pairs:
            return Verdict(False, (x, y))
    return Verdict(True)


def is_f_closed(R: FiniteRelation, f: SelfMap) -> Verdict:
    """Witness is ``((x, y), (fx, fy))`` for a pair whose image leaves R."""
    for x, y in R.sorted_pairs():
        image = (f(x), f(y))
        if image not in R.pairs:
            return Verdict(False, ((x, y), image))
    return Verdict(True)


def is_directed(R: FiniteRelation, D: Iterable[str]) -> Verdict:
    """Every x, y in D share an R-successor somewhere in the carrier.

    On success the witness maps each pair to the chosen common successor.
    """
    succ = R.successors
    chosen = {}
    for x, y in _ordered_pairs(R, D):
        common = [z for z in succ[x] if (y, z) in R.pairs]
        if not common:
            return Verdict(False, (x, y))
        chosen[x, y] = common[0]
    return Verdict(True, chosen)


def find_path(R: FiniteRelation, x: str, y: str) -> Optional[Path]:
    """Shortest path of length >= 1 from x to y along R, or None.

    Breadth-first; successors are expanded in carrier order, which breaks
    ties between equally short paths.
    """
    if x not in R.successors or y not in R.successors:
        raise RelationError(f"({x}, {y}) not in the carrier")
    succ = R.successors
    parent: dict[str, str] = {}
    queue = deque()
    for z in succ[x]:
        if z not in parent:
            parent[z] = x
            queue.append(z)
    while queue:
        node = queue.popleft()
        if node == y:
            nodes = [y]
            cur = y
            while True:
                cur = parent[cur]
                nodes.append(cur)
                if cur == x and len(nodes) > 1:
                    break
            return Path(tuple(reversed(nodes)))
        for z in succ[node]:
            if z not in parent:
                parent[z] = node
                queue.append(z)
    return None


def is_preserving(R: FiniteRelation, seq: Sequence[str]) -> bool:
    if not seq:
        raise RelationError("an R-preserving check needs a nonempty sequence")
    return all((a, b) in R.pairs for a, b in zip(seq, seq[1:]))
