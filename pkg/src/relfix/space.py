"""Finite distance tables and the metric / partial metric / metric-like axioms.

All values are exact rationals (:class:`fractions.Fraction`); no comparison
in this module goes through floating point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Sequence, Union

Rational = Union[int, Fraction, str]


class SpaceError(ValueError):
    """Raised for malformed distance tables (asymmetric, negative, missing pairs)."""


def as_rational(value: Rational) -> Fraction:
    """Coerce ``value`` to an exact Fraction.

    Floats are refused: a float literal like ``0.1`` is already inexact.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"exact rational expected, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"exact rational expected, got {type(value).__name__}")


@dataclass(frozen=True)
class FiniteDistanceSpace:
    """A labelled finite set with a symmetric, nonnegative distance table.

    ``table[i][j]`` is the distance between ``points[i]`` and ``points[j]``.
    Use :meth:`from_pairs` to build from a sparse mapping.
    """

    points: tuple[str, ...]
    table: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if not self.points:
            raise SpaceError("a space needs at least one point")
        if len(set(self.points)) != len(self.points):
            raise SpaceError(f"duplicate point labels in {self.points!r}")
        n = len(self.points)
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise SpaceError("distance table must be square over the point list")
        for i, j in product(range(n), repeat=2):
            v = self.table[i][j]
            if not isinstance(v, Fraction):
                raise SpaceError("table entries must be Fractions (use from_pairs/from_matrix)")
            if v < 0:
                raise SpaceError(f"negative distance at ({self.points[i]}, {self.points[j]}): {v}")
            if v != self.table[j][i]:
                raise SpaceError(
                    f"asymmetric distance: d({self.points[i]},{self.points[j]})={v} "
                    f"but d({self.points[j]},{self.points[i]})={self.table[j][i]}"
                )

    @classmethod
    def from_matrix(cls, points: Sequence[str], rows: Sequence[Sequence[Rational]]) -> FiniteDistanceSpace:
        table = tuple(tuple(as_rational(v) for v in row) for row in rows)
        return cls(tuple(points), table)

    @classmethod
    def from_pairs(
        cls,
        points: Sequence[str],
        dist: Mapping[tuple[str, str], Rational],
        strict: bool = False,
    ) -> FiniteDistanceSpace:
        """Build from ``{(x, y): value}``; one orientation per pair suffices.

        With ``strict=True`` every ordered pair must be listed.
        """
        points = tuple(points)
        known = set(points)
        for x, y in dist:
            if x not in known or y not in known:
                raise SpaceError(f"distance given for unknown pair ({x}, {y})")
        rows = []
        for x in points:
            row = []
            for y in points:
                fwd, bwd = dist.get((x, y)), dist.get((y, x))
                if fwd is None and bwd is None:
                    raise SpaceError(f"missing distance for pair ({x}, {y})")
                if strict and fwd is None:
                    raise SpaceError(f"strict mode: pair ({x}, {y}) not listed")
                fwd = as_rational(fwd) if fwd is not None else None
                bwd = as_rational(bwd) if bwd is not None else None
                if fwd is not None and bwd is not None and fwd != bwd:
                    raise SpaceError(f"asymmetric distance: d({x},{y})={fwd} but d({y},{x})={bwd}")
                row.append(fwd if fwd is not None else bwd)
            rows.append(tuple(row))
        return cls(points, tuple(rows))

    @cached_property
    def index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def _lookup(self) -> dict[tuple[str, str], Fraction]:
        return {
            (x, y): self.table[i][j]
            for i, x in enumerate(self.points)
            for j, y in enumerate(self.points)
        }

    def dist(self, x: str, y: str) -> Fraction:
        return self._lookup[x, y]

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, x: object) -> bool:
        return x in self.index

    def subset(self, labels: Iterable[str]) -> tuple[str, ...]:
        """Validate ``labels`` against the carrier and return them in carrier order."""
        wanted = set(labels)
        unknown = wanted - set(self.points)
        if unknown:
            raise SpaceError(f"unknown points: {sorted(unknown)}")
        return tuple(p for p in self.points if p in wanted)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[str, ...]
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class AxiomReport:
    violations: tuple[Violation, ...] = ()
    # Findings that do not affect ``satisfied`` (see check_partial_metric).
    notes: tuple[Violation, ...] = ()

    @property
    def satisfied(self) -> bool:
        return not self.violations

    def of(self, axiom: str) -> list[Violation]:
        return [v for v in self.violations if v.axiom == axiom]


class SpaceClass(enum.Enum):
    METRIC = "Metric"
    PARTIAL_METRIC = "PartialMetric"
    METRIC_LIKE = "MetricLike"
    NOT_METRIC_LIKE = "NotMetricLike"


# Axiom ids.  ``evaluate`` returns (lhs, rhs) for a witness tuple and
# ``is_violation`` re-decides a reported failure from those values.
SIGMA1 = "sigma1"  # d(x,y) = 0  =>  x = y           witness (x, y)
SIGMA3 = "sigma3"  # d(x,y) <= d(x,z) + d(z,y)        witness (x, z, y)
P1 = "p1"          # p(x,x)=p(x,y)=p(y,y)  =>  x = y  witness (x, y)
P2 = "p2"          # p(x,x) <= p(x,y)                 witness (x, y)
P4 = "p4"          # p(x,y) <= p(x,z)+p(z,y)-p(z,z)   witness (x, z, y)
ZERO_SELF = "zero_self"  # d(x,x) = 0                 witness (x,)


def evaluate(space: FiniteDistanceSpace, axiom: str, witness: tuple[str, ...]) -> tuple[Fraction, Fraction]:
    """Recompute the two sides an axiom compares for ``witness``."""
    d = space.dist
    if axiom == SIGMA1:
        x, y = witness
        return d(x, y), Fraction(0)
    if axiom == SIGMA3:
        x, z, y = witness
        return d(x, y), d(x, z) + d(z, y)
    if axiom == P1:
        x, y = witness
        return d(x, y), d(x, x)
    if axiom == P2:
        x, y = witness
        return d(x, x), d(x, y)
    if axiom == P4:
        x, z, y = witness
        return d(x, y), d(x, z) + d(z, y) - d(z, z)
    if axiom == ZERO_SELF:
        (x,) = witness
        return d(x, x), Fraction(0)
    raise KeyError(axiom)


def is_violation(space: FiniteDistanceSpace, v: Violation) -> bool:
    """Re-check a reported violation against the table."""
    lhs, rhs = evaluate(space, v.axiom, v.witness)
    if (lhs, rhs) != (v.lhs, v.rhs):
        return False
    if v.axiom == SIGMA1:
        return v.witness[0] != v.witness[1] and lhs == 0
    if v.axiom == P1:
        x, y = v.witness
        return x != y and lhs == rhs == space.dist(y, y)
    if v.axiom == ZERO_SELF:
        return lhs != rhs
    return lhs > rhs


def _triangle_violations(space: FiniteDistanceSpace, axiom: str) -> list[Violation]:
    pts = space.points
    out = []
    for i, x in enumerate(pts):
        for y in pts[i:]:
            for z in pts:
                lhs, rhs = evaluate(space, axiom, (x, z, y))
                if lhs > rhs:
                    out.append(Violation(axiom, (x, z, y), lhs, rhs))
    return out


def check_metric_like(space: FiniteDistanceSpace) -> AxiomReport:
    """Check the dislocated-metric axioms; symmetry is guaranteed by construction."""
    pts = space.points
    out = []
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            if space.dist(x, y) == 0:
                out.append(Violation(SIGMA1, (x, y), Fraction(0), Fraction(0)))
    out.extend(_triangle_violations(space, SIGMA3))
    return AxiomReport(tuple(out))


def check_partial_metric(space: FiniteDistanceSpace) -> AxiomReport:
    """Check p1, p2 and p4.

    p1 can only fail in its forward direction: distinct x, y with
    p(x,x) = p(x,y) = p(y,y).  When that common value is 0 it is a
    violation (it is exactly a failure of sigma1).  When it is positive the
    pair is recorded in ``notes`` instead, so that tables such as the
    three-point "0 at (a,a), 1 elsewhere" example still classify as
    partial metrics.
    """
    pts = space.points
    d = space.dist
    out = []
    notes = []
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            if d(x, x) == d(x, y) == d(y, y):
                (out if d(x, y) == 0 else notes).append(Violation(P1, (x, y), d(x, y), d(x, x)))
    for x in pts:
        for y in pts:
            if x != y and d(x, x) > d(x, y):
                out.append(Violation(P2, (x, y), d(x, x), d(x, y)))
    out.extend(_triangle_violations(space, P4))
    return AxiomReport(tuple(out), tuple(notes))


def check_metric(space: FiniteDistanceSpace) -> AxiomReport:
    """Partial-metric report plus every nonzero self-distance."""
    partial = check_partial_metric(space)
    out = list(partial.violations)
    for x in space.points:
        if space.dist(x, x) != 0:
            out.append(Violation(ZERO_SELF, (x,), space.dist(x, x), Fraction(0)))
    return AxiomReport(tuple(out), partial.notes)


def classify(space: FiniteDistanceSpace) -> SpaceClass:
    if check_metric(space).satisfied:
        return SpaceClass.METRIC
    if check_partial_metric(space).satisfied:
        return SpaceClass.PARTIAL_METRIC
    if check_metric_like(space).satisfied:
        return SpaceClass.METRIC_LIKE
    return SpaceClass.NOT_METRIC_LIKE
