"""Command-line front end.

Exit codes (stable):

    0   success: metric-like / unique fixed point / fixed point found / consistent
    1   validate: existence guaranteed, uniqueness not
    2   check-axioms: not metric-like; validate: no guarantee
    3   solve: no fixed point within the iteration budget
    5   oracle / sweep: soundness alarm
    64  malformed input document or arguments
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .analysis import check_r_completeness, check_sigma_self_closed, simulate_walks
from .document import (
    DocumentError,
    dumps,
    instance_from_document,
    parse_json,
    report_document,
    space_from_document,
)
from .solver import NonConvergence, picard
from .space import SpaceClass, check_metric, check_metric_like, check_partial_metric, classify
from .validator import Prediction, cross_check, validate

EXIT_OK = 0
EXIT_EXISTENCE = 1
EXIT_NO_GUARANTEE = 2
EXIT_NONCONVERGENCE = 3
EXIT_ALARM = 5
EXIT_USAGE = 64


class UsageError(Exception):
    pass


def _read(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    return parse_json(text)


def _emit(args: argparse.Namespace, doc: dict, lines: list[str]) -> None:
    if args.json:
        sys.stdout.write(dumps(doc))
    else:
        print("\n".join(lines))


def cmd_check_axioms(args: argparse.Namespace) -> int:
    space = space_from_document(_read(args.path), strict=args.strict)
    cls = classify(space)
    reports = {
        "metricLike": check_metric_like(space),
        "partialMetric": check_partial_metric(space),
        "metric": check_metric(space),
    }
    doc = report_document("axioms", reports, {"classification": cls.value})
    lines = [f"classification: {cls.value}"]
    for name, rep in reports.items():
        lines.append(f"{name}: {'satisfied' if rep.satisfied else 'violated'}")
        for v in rep.violations:
            lines.append(f"  {v.axiom} at ({', '.join(v.witness)}): lhs={v.lhs} rhs={v.rhs}")
    _emit(args, doc, lines)
    return EXIT_OK if cls is not SpaceClass.NOT_METRIC_LIKE else EXIT_NO_GUARANTEE


def cmd_validate(args: argparse.Namespace) -> int:
    instance = instance_from_document(_read(args.path), strict=args.strict)
    report = validate(instance)
    doc = report_document("hypotheses", report)
    lines = [f"prediction: {report.prediction.value}"]
    for key, cond in report.conditions.items():
        if not args.corollaries and key in ("f_prime", "f_double_prime"):
            continue
        mark = "holds" if cond.holds else "FAILS"
        extra = f"  ({cond.detail})" if cond.detail else ""
        lines.append(f"  ({key}) {mark}{extra}")
    lines.append(f"k*: {report.k_star.k_star} (feasible: {report.k_star.feasible})")
    if report.integral_prediction is not None:
        lines.append(f"integral prediction: {report.integral_prediction.value}")
    if args.corollaries:
        lines.append("applicable results: " + (", ".join(report.applicable_results) or "none"))
    _emit(args, doc, lines)
    return {
        Prediction.UNIQUE: EXIT_OK,
        Prediction.EXISTENCE: EXIT_EXISTENCE,
        Prediction.NO_GUARANTEE: EXIT_NO_GUARANTEE,
    }[report.prediction]


def cmd_solve(args: argparse.Namespace) -> int:
    instance = instance_from_document(_read(args.path), strict=args.strict)
    report = validate(instance)
    x0 = args.x0 or instance.x0
    if x0 is None:
        x0 = report.admissible_starts[0] if report.admissible_starts else instance.space.points[0]
    if x0 not in instance.space:
        raise UsageError(f"--x0: unknown point {x0!r}")
    k = instance.k if instance.k is not None and instance.k < 1 else None
    if k is None and report.k_star.feasible:
        k = report.k_star.k_star
    try:
        trace, cert = picard(instance.space, instance.fmap, x0, args.max_iter, k=k, relation=instance.relation)
    except NonConvergence as exc:
        doc = report_document("solve", {"trace": exc.trace, "certificate": None}, {"x0": x0, "converged": False})
        _emit(args, doc, [f"no fixed point: {exc}", "iterates: " + " -> ".join(exc.trace.iterates)])
        return EXIT_NONCONVERGENCE
    doc = report_document("solve", {"trace": trace, "certificate": cert}, {"x0": x0, "converged": True})
    lines = [
        "iterates: " + " -> ".join(trace.iterates),
        "gaps: " + ", ".join(str(g) for g in trace.gaps),
    ]
    if trace.bounds:
        lines.append(f"bounds (k={trace.k}): " + ", ".join(str(b) for b in trace.bounds))
    lines.append(
        f"fixed point: {cert.point} after {cert.iterations} application(s); "
        f"self-distance {cert.self_distance}, residual {cert.residual}"
    )
    _emit(args, doc, lines)
    return EXIT_OK


def _prediction_override(report, doc: dict):
    body = doc.get("report", doc)
    try:
        changes = {"prediction": Prediction(body["prediction"])}
        if body.get("integralPrediction") is not None:
            changes["integral_prediction"] = Prediction(body["integralPrediction"])
    except (KeyError, ValueError, TypeError):
        raise DocumentError("report: expected a hypotheses report with a valid 'prediction'") from None
    return dataclasses.replace(report, **changes)


def cmd_oracle(args: argparse.Namespace) -> int:
    instance = instance_from_document(_read(args.path), strict=args.strict)
    report = validate(instance)
    if args.report:
        report = _prediction_override(report, _read(args.report))
    verdict = cross_check(instance, report)

    space, R, Y = instance.space, instance.relation, instance.Y
    complete = check_r_completeness(space, R, Y).holds
    closed = check_sigma_self_closed(space, R, Y).holds
    walks = simulate_walks(space, R, Y, args.walks, args.horizon, args.seed)
    contradictions = []
    for i, w in enumerate(walks):
        if not w.stabilized:
            continue
        window = w.sequence[-max(1, len(w.sequence) // 3):]
        if complete and w.cauchy_value is not None and not any(
            space.dist(y, y) == w.cauchy_value for y in w.limits
        ):
            contradictions.append(f"walk {i}: Cauchy with value {w.cauchy_value} but no limit in Y")
        if closed:
            for y in sorted(w.limits):
                if not any((s, y) in R.pairs or (y, s) in R.pairs for s in window):
                    contradictions.append(f"walk {i}: converges to {y} with no related term")
    summary = {
        "walks": len(walks),
        "stuck": sum(w.stuck for w in walks),
        "stabilized": sum(w.stabilized for w in walks),
        "cauchy": sum(w.cauchy_value is not None for w in walks),
        "contradictions": contradictions,
    }
    doc = report_document(
        "oracle",
        {"consistency": verdict, "walkSummary": summary},
        {"prediction": report.prediction.value, "seed": args.seed},
    )
    lines = [
        "F(f) = {" + ", ".join(sorted(verdict.fixed_points, key=space.index.__getitem__)) + "}",
        f"prediction: {report.prediction.value}",
        f"consistent: {verdict.consistent}",
        *(f"  ALARM: {a}" for a in verdict.alarms),
        f"walks: {summary['walks']} (stuck {summary['stuck']}, stabilized {summary['stabilized']}, "
        f"Cauchy {summary['cauchy']}, contradictions {len(contradictions)})",
    ]
    _emit(args, doc, lines)
    return EXIT_OK if verdict.consistent and not contradictions else EXIT_ALARM


def cmd_sweep(args: argparse.Namespace) -> int:
    from .sweep import run_sweep

    try:
        values = tuple(int(v) for v in args.values.split(","))
    except ValueError:
        raise UsageError("--values: expected comma-separated integers") from None
    result = run_sweep(args.max_size, values, canonical=not args.no_canonical, jobs=args.jobs)
    doc = report_document(
        "sweep",
        {
            "instances": result.instances,
            "predictions": dict(sorted(result.predictions.items())),
            "alarms": result.alarms,
            "subsumptionViolations": result.subsumption_violations,
            "constructionViolations": result.construction_violations,
        },
    )
    lines = [f"instances: {result.instances}"]
    lines += [f"  {k}: {v}" for k, v in sorted(result.predictions.items())]
    lines.append(
        f"alarms: {len(result.alarms)}, subsumption violations: {len(result.subsumption_violations)}, "
        f"construction violations: {len(result.construction_violations)}"
    )
    _emit(args, doc, lines)
    return EXIT_OK if result.clean else EXIT_ALARM


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relfix", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str, instance: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        if instance:
            p.add_argument("path", help="JSON instance document")
            p.add_argument("--strict", action="store_true", help="require every ordered sigma pair")
        p.add_argument("--json", action="store_true", help="machine-readable report on stdout")
        p.set_defaults(func=func)
        return p

    add("check-axioms", cmd_check_axioms, "classify the distance table")
    p = add("validate", cmd_validate, "check the contraction principle's hypotheses")
    p.add_argument("--corollaries", action="store_true", help="show the alternative uniqueness conditions")
    p = add("solve", cmd_solve, "run Picard iteration")
    p.add_argument("--x0", help="start point (default: document x0, else an admissible start)")
    p.add_argument("--max-iter", type=int, default=None)
    p = add("oracle", cmd_oracle, "brute-force fixed points, consistency and random walks")
    p.add_argument("--report", help="cross-check this saved hypotheses report instead of a fresh one")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--walks", type=int, default=1000)
    p.add_argument("--horizon", type=int, default=200)
    p = add("sweep", cmd_sweep, "exhaustive soundness sweep over small instances", instance=False)
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--values", default="0,1,2")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-canonical", action="store_true", help="do not reduce tables up to relabelling")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (DocumentError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
