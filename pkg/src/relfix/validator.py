"""Hypothesis checking for the relation-theoretic contraction principle.

:func:`validate` evaluates conditions (a)-(f) plus the two alternative
uniqueness conditions on an :class:`Instance` and predicts what the
principle guarantees.  :func:`cross_check` holds a prediction against the
brute-force fixed point set and Picard runs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .analysis import check_continuity_like, check_r_completeness, check_r_continuity_like, check_sigma_self_closed
from .contraction import ContractionReport, IntegrandSpec, check_k, integral_minimal_k, minimal_k
from .relation import FiniteRelation, SelfMap, find_path, is_complete, is_directed, is_f_closed, symmetrize
from .solver import NonConvergence, fixed_points, picard, uniqueness_by_paths
from .space import FiniteDistanceSpace


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    space: FiniteDistanceSpace
    relation: FiniteRelation
    fmap: SelfMap
    Y: tuple[str, ...] = ()
    x0: Optional[str] = None
    k: Optional[Fraction] = None
    rho: Optional[IntegrandSpec] = None

    def __post_init__(self) -> None:
        X = self.space.points
        if self.relation.carrier != X or self.fmap.carrier != X:
            raise InstanceError("space, relation and map must share one carrier (same order)")
        if not self.Y:
            object.__setattr__(self, "Y", X)
        unknown = set(self.Y) - set(X)
        if unknown:
            raise InstanceError(f"Y contains unknown points {sorted(unknown)}")
        object.__setattr__(self, "Y", tuple(p for p in X if p in set(self.Y)))
        outside = [p for p in self.fmap.image() if p not in self.Y]
        if outside:
            raise InstanceError(f"f(X) is not contained in Y: {outside} missing")
        if self.x0 is not None and self.x0 not in self.space:
            raise InstanceError(f"x0={self.x0!r} is not a point")
        if self.k is not None and self.k < 0:
            raise InstanceError(f"k must be nonnegative, got {self.k}")


class Prediction(enum.Enum):
    NO_GUARANTEE = "NoGuarantee"
    EXISTENCE = "ExistenceGuaranteed"
    UNIQUE = "UniqueFixedPoint"

    @property
    def rank(self) -> int:
        return ("NoGuarantee", "ExistenceGuaranteed", "UniqueFixedPoint").index(self.value)


@dataclass(frozen=True)
class ConditionResult:
    holds: bool
    witness: Any = None
    detail: str = ""


# Condition keys, in report order.
A, B, C, D = "a", "b", "c", "d"
D_CONTINUITY, D_SELF_CLOSED = "d_continuity", "d_self_closed"
E, E_INTEGRAL = "e", "e_integral"
F, F_PRIME, F_DOUBLE_PRIME = "f", "f_prime", "f_double_prime"


@dataclass(frozen=True)
class HypothesisReport:
    conditions: dict[str, ConditionResult]
    k_star: ContractionReport
    admissible_starts: tuple[str, ...]
    prediction: Prediction
    applicable_results: tuple[str, ...] = ()
    integral_k_star: Optional[ContractionReport] = None
    integral_prediction: Optional[Prediction] = None
    corollary3: Optional[Corollary3Result] = None

    def holds(self, key: str) -> bool:
        return self.conditions[key].holds


def _predict(existence: bool, uniqueness: bool) -> Prediction:
    if not existence:
        return Prediction.NO_GUARANTEE
    return Prediction.UNIQUE if uniqueness else Prediction.EXISTENCE


def path_condition(R: FiniteRelation, f: SelfMap) -> ConditionResult:
    """Condition (f): every two image points are joined by a path in R^s."""
    Rs = symmetrize(R)
    fx = f.image()
    longest = 0
    for i, a in enumerate(fx):
        for b in fx[i:]:
            path = find_path(Rs, a, b)
            if path is None:
                return ConditionResult(False, (a, b), f"no path from {a} to {b} in R^s")
            longest = max(longest, path.length)
    return ConditionResult(True, longest, f"longest shortest path: {longest}")


@dataclass(frozen=True)
class Corollary3Result:
    directed: ConditionResult
    complete: ConditionResult
    # Longest shortest path between image points, checked against the
    # bound each condition promises (2 for directedness, 1 for completeness).
    max_path_length: Optional[int] = None
    construction_verified: bool = True


def corollary3_variants(instance: Instance) -> Corollary3Result:
    R, f = instance.relation, instance.fmap
    Rs = symmetrize(R)
    fx = f.image()
    v1 = is_directed(Rs, fx)
    v2 = is_complete(R, fx)
    directed = ConditionResult(v1.holds, v1.witness, "fX is R^s-directed" if v1.holds else "pair without common successor")
    complete = ConditionResult(v2.holds, v2.witness, "R|fX is complete" if v2.holds else "unrelated pair in fX")
    if not (v1.holds or v2.holds):
        return Corollary3Result(directed, complete)
    longest = 0
    for i, a in enumerate(fx):
        for b in fx[i:]:
            path = find_path(Rs, a, b)
            longest = max(longest, path.length if path is not None else 10**9)
    bound = 1 if v2.holds else 2
    return Corollary3Result(directed, complete, longest, longest <= bound)


def validate(instance: Instance) -> HypothesisReport:
    space, R, f, Y = instance.space, instance.relation, instance.fmap, instance.Y
    X = space.points
    cond: dict[str, ConditionResult] = {}

    rep = check_r_completeness(space, R, Y)
    cond[A] = ConditionResult(rep.holds, rep.witness, "" if rep.holds else "Cauchy tail without a limit in Y")

    admissible = tuple(x for x in X if (x, f(x)) in R.pairs)
    if instance.x0 is not None:
        x0 = instance.x0
        ok = (x0, f(x0)) in R.pairs
        cond[B] = ConditionResult(ok, x0, f"given x0={x0}")
    else:
        cond[B] = ConditionResult(bool(admissible), admissible, f"{len(admissible)} admissible start(s)")

    v = is_f_closed(R, f)
    cond[C] = ConditionResult(v.holds, v.witness)

    cont = check_r_continuity_like(space, R, f)
    closed = check_sigma_self_closed(space, R, Y)
    cond[D_CONTINUITY] = ConditionResult(cont.holds, cont.witness)
    cond[D_SELF_CLOSED] = ConditionResult(closed.holds, closed.witness)
    cond[D] = ConditionResult(
        cont.holds or closed.holds,
        None,
        "f is R-continuous-like" if cont.holds else ("R|Y is self-closed" if closed.holds else "neither branch"),
    )

    mk = minimal_k(space, R, f)
    if instance.k is None:
        cond[E] = ConditionResult(mk.feasible, mk.blocking_pairs or None, f"k* = {mk.k_star}")
    elif instance.k >= 1:
        cond[E] = ConditionResult(False, None, f"given k={instance.k} is outside [0, 1)")
    else:
        vk = check_k(space, R, f, instance.k)
        cond[E] = ConditionResult(vk.holds, vk.witness, f"given k={instance.k}, k* = {mk.k_star}")

    integral = None
    if instance.rho is not None:
        integral = integral_minimal_k(space, R, f, instance.rho)
        cond[E_INTEGRAL] = ConditionResult(integral.feasible, integral.blocking_pairs or None, f"k* = {integral.k_star}")

    cond[F] = path_condition(R, f)
    c3 = corollary3_variants(instance)
    cond[F_PRIME] = c3.directed
    cond[F_DOUBLE_PRIME] = c3.complete

    base = cond[A].holds and cond[B].holds and cond[C].holds and cond[D].holds
    uniq = cond[F].holds or cond[F_PRIME].holds or cond[F_DOUBLE_PRIME].holds
    existence = base and cond[E].holds
    prediction = _predict(existence, uniq)

    results = []
    if existence:
        results.append("Theorem 1")
        if set(Y) == set(X):
            results.append("Corollary 1")
    universal_R = FiniteRelation.universal(X)
    y_complete = check_r_completeness(space, universal_R, Y).holds
    if (
        y_complete
        and cond[B].holds
        and cond[C].holds
        and (check_continuity_like(space, f).holds or closed.holds)
        and cond[E].holds
    ):
        results.append("Corollary 2")
    if existence and (cond[F_PRIME].holds or cond[F_DOUBLE_PRIME].holds):
        results.append("Corollary 3")
    if R.is_universal() and y_complete and cond[E].holds:
        results.append("Corollary 4")

    integral_prediction = None
    if integral is not None:
        integral_prediction = _predict(base and integral.feasible, uniq)
        if base and integral.feasible:
            results.append("Theorem 2")
        if R.is_universal() and y_complete and integral.feasible:
            results.append("Corollary 5")

    return HypothesisReport(
        conditions=cond,
        k_star=mk,
        admissible_starts=admissible,
        prediction=prediction,
        applicable_results=tuple(results),
        integral_k_star=integral,
        integral_prediction=integral_prediction,
        corollary3=c3,
    )


@dataclass(frozen=True)
class ConsistencyVerdict:
    consistent: bool
    fixed_points: frozenset[str]
    alarms: tuple[str, ...] = ()
    # start point -> fixed point reached (None on non-convergence)
    picard_results: dict[str, Optional[str]] = field(default_factory=dict)
    # Serialized instance document, attached only when an alarm fired.
    instance_document: Optional[dict] = None


def cross_check(instance: Instance, report: HypothesisReport) -> ConsistencyVerdict:
    """Hold the report's predictions against brute force.

    Predictions are one-directional: fixed points existing despite failed
    hypotheses are never flagged.
    """
    space, R, f = instance.space, instance.relation, instance.fmap
    F_set = fixed_points(space, f)
    alarms = []

    predictions = [("Theorem 1", report.prediction)]
    if report.integral_prediction is not None:
        predictions.append(("Theorem 2", report.integral_prediction))
    for name, pred in predictions:
        if pred.rank >= Prediction.EXISTENCE.rank and not F_set:
            alarms.append(f"{name}: predicted {pred.value} but f has no fixed point")
        if pred is Prediction.UNIQUE and len(F_set) != 1:
            alarms.append(f"{name}: predicted a unique fixed point, found {sorted(F_set)}")

    guaranteed = report.prediction.rank >= Prediction.EXISTENCE.rank
    k = report.k_star.k_star if report.k_star.feasible else None
    starts = report.admissible_starts if instance.x0 is None else (instance.x0,)
    runs: dict[str, Optional[str]] = {}
    for x0 in starts:
        try:
            trace, cert = picard(space, f, x0, k=k, relation=R)
        except NonConvergence:
            runs[x0] = None
            if guaranteed:
                alarms.append(f"Picard from {x0} did not converge despite {report.prediction.value}")
            continue
        runs[x0] = cert.point
        if f(cert.point) != cert.point or cert.point not in F_set:
            alarms.append(f"certificate point {cert.point} is not a fixed point")
        if guaranteed and (x0, f(x0)) in R.pairs:
            if cert.residual != 0:
                alarms.append(f"fixed point {cert.point} has residual {cert.residual} under verified hypotheses")
            if report.holds(C) and not cert.preserving_verified:
                alarms.append(f"Picard orbit from {x0} left R although R is f-closed")
            if k is not None:
                d0 = trace.gaps[0]
                for n, gap in enumerate(trace.gaps):
                    if gap > k**n * d0:
                        alarms.append(f"gap {n} from {x0} exceeds k*^n d0")
                        break

    if report.holds(C) and report.k_star.feasible:
        u = uniqueness_by_paths(space, R, f, F_set, report.k_star.k_star)
        if u.alarm is not None:
            alarms.append(u.explanation)

    doc = None
    if alarms:
        from .document import instance_to_document

        doc = instance_to_document(instance)
    return ConsistencyVerdict(not alarms, F_set, tuple(alarms), runs, doc)
