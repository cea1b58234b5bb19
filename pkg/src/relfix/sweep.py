"""Exhaustive small-instance sweeps.

Enumerates every metric-like distance table over a value grid, every
relation and every self-map on carriers of up to ``max_size`` points, then
validates each instance and cross-checks the prediction by brute force.
Zero alarms means the contraction principle held on every instance.
"""

from __future__ import annotations

import logging
import string
from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations, product
from multiprocessing import Pool
from typing import Iterator, Optional, Sequence

from .contraction import IntegrandSpec
from .relation import FiniteRelation, SelfMap
from .space import FiniteDistanceSpace, check_metric_like
from .validator import F, F_DOUBLE_PRIME, F_PRIME, Instance, cross_check, validate

log = logging.getLogger(__name__)

LABELS = string.ascii_lowercase


def _canonical(n: int, rows: tuple[tuple[int, ...], ...]) -> bool:
    """True when ``rows`` is the smallest relabelling of itself."""
    for perm in permutations(range(n)):
        other = tuple(tuple(rows[perm[i]][perm[j]] for j in range(n)) for i in range(n))
        if other < rows:
            return False
    return True


def distance_tables(
    n: int, values: Sequence[int] = (0, 1, 2), canonical: bool = False
) -> Iterator[FiniteDistanceSpace]:
    """Every symmetric table on n points over ``values`` that is metric-like.

    With ``canonical=True`` only one table per relabelling class is kept;
    all checks are invariant under renaming points, so a sweep loses
    nothing.
    """
    points = tuple(LABELS[:n])
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    for combo in product(values, repeat=len(cells)):
        grid = [[0] * n for _ in range(n)]
        for (i, j), v in zip(cells, combo):
            grid[i][j] = grid[j][i] = v
        rows = tuple(tuple(r) for r in grid)
        if canonical and not _canonical(n, rows):
            continue
        space = FiniteDistanceSpace.from_matrix(points, rows)
        if check_metric_like(space).satisfied:
            yield space


def relations(carrier: Sequence[str]) -> Iterator[FiniteRelation]:
    cells = [(x, y) for x in carrier for y in carrier]
    for mask in range(1 << len(cells)):
        yield FiniteRelation(tuple(carrier), frozenset(c for i, c in enumerate(cells) if mask >> i & 1))


def self_maps(carrier: Sequence[str]) -> Iterator[SelfMap]:
    for images in product(carrier, repeat=len(carrier)):
        yield SelfMap(tuple(carrier), images)


@dataclass
class SweepSummary:
    instances: int = 0
    predictions: Counter = field(default_factory=Counter)
    alarms: list[dict] = field(default_factory=list)
    subsumption_violations: list[dict] = field(default_factory=list)
    construction_violations: list[dict] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not (self.alarms or self.subsumption_violations or self.construction_violations)

    def merge(self, other: SweepSummary) -> None:
        self.instances += other.instances
        self.predictions.update(other.predictions)
        self.alarms.extend(other.alarms)
        self.subsumption_violations.extend(other.subsumption_violations)
        self.construction_violations.extend(other.construction_violations)


def check_instance(instance: Instance, summary: SweepSummary) -> None:
    from .document import instance_to_document

    report = validate(instance)
    summary.instances += 1
    summary.predictions[report.prediction.value] += 1
    if report.integral_prediction is not None:
        summary.predictions["integral:" + report.integral_prediction.value] += 1
    verdict = cross_check(instance, report)
    if not verdict.consistent:
        summary.alarms.append({"alarms": list(verdict.alarms), "instance": verdict.instance_document})
    c = report.conditions
    if (c[F_DOUBLE_PRIME].holds or c[F_PRIME].holds) and not c[F].holds:
        summary.subsumption_violations.append(instance_to_document(instance))
    if not report.corollary3.construction_verified:
        summary.construction_violations.append(instance_to_document(instance))


def _sweep_space(args: tuple[FiniteDistanceSpace, Optional[IntegrandSpec]]) -> SweepSummary:
    space, rho = args
    summary = SweepSummary()
    maps = list(self_maps(space.points))
    for R in relations(space.points):
        for f in maps:
            check_instance(Instance(space, R, f, rho=rho), summary)
    return summary


def run_sweep(
    max_size: int = 3,
    values: Sequence[int] = (0, 1, 2),
    canonical: bool = True,
    rho: Optional[IntegrandSpec] = IntegrandSpec.power(1),
    jobs: int = 1,
) -> SweepSummary:
    """Sweep carriers of size 1..max_size; ``jobs`` > 1 splits work by distance table."""
    tasks = [(space, rho) for n in range(1, max_size + 1) for space in distance_tables(n, values, canonical)]
    total = SweepSummary()
    if jobs > 1:
        with Pool(jobs) as pool:
            for part in pool.imap(_sweep_space, tasks):
                total.merge(part)
    else:
        for task in tasks:
            total.merge(_sweep_space(task))
    log.info("swept %d instances over %d distance tables", total.instances, len(tasks))
    return total
