"""JSON instance and report documents.

Rationals travel as strings (``"3/2"``, ``"2"``) so files stay exact; a
JSON number anywhere a rational is expected is a load error.
"""

from __future__ import annotations

import enum
import json
from dataclasses import fields, is_dataclass
from fractions import Fraction
from typing import Any, Optional

from .analysis import TailSet
from .contraction import CONSTANT, PIECEWISE, POWER, IntegrandSpec
from .relation import FiniteRelation, SelfMap
from .space import FiniteDistanceSpace
from .validator import Instance

SCHEMA_VERSION = "relfix.report/1"


class DocumentError(ValueError):
    """Malformed instance document; the message names the offending field."""


def _rational(value: Any, where: str) -> Fraction:
    if not isinstance(value, str):
        raise DocumentError(f"{where}: rationals must be strings like \"3/2\", got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"{where}: not a rational: {value!r}") from None


def _labels(value: Any, where: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(p, str) for p in value):
        raise DocumentError(f"{where}: expected an array of point labels")
    return value


def parse_json(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError("top level: expected a JSON object")
    return doc


def space_from_document(doc: dict, strict: bool = False) -> FiniteDistanceSpace:
    if "points" not in doc:
        raise DocumentError("points: required field missing")
    points = _labels(doc["points"], "points")
    raw = doc.get("sigma")
    if not isinstance(raw, list):
        raise DocumentError("sigma: expected an array of [label, label, value] triples")
    table: dict[tuple[str, str], Fraction] = {}
    for i, entry in enumerate(raw):
        where = f"sigma[{i}]"
        if not (isinstance(entry, list) and len(entry) == 3 and isinstance(entry[0], str) and isinstance(entry[1], str)):
            raise DocumentError(f"{where}: expected [label, label, value]")
        x, y, v = entry
        if (x, y) in table:
            raise DocumentError(f"{where}: pair ({x}, {y}) listed twice")
        table[x, y] = _rational(v, where)
    try:
        return FiniteDistanceSpace.from_pairs(points, table, strict=strict)
    except ValueError as exc:
        raise DocumentError(f"sigma: {exc}") from None


def rho_from_document(raw: Any) -> IntegrandSpec:
    if not isinstance(raw, dict) or "kind" not in raw:
        raise DocumentError("rho: expected {\"kind\": ..., \"params\": {...}}")
    kind, params = raw["kind"], raw.get("params", {})
    if not isinstance(params, dict):
        raise DocumentError("rho.params: expected an object")
    try:
        if kind == CONSTANT:
            return IntegrandSpec.constant(_rational(params.get("c", "1"), "rho.params.c"))
        if kind == POWER:
            return IntegrandSpec.power(
                _rational(params.get("alpha"), "rho.params.alpha"), _rational(params.get("c", "1"), "rho.params.c")
            )
        if kind == PIECEWISE:
            knots = params.get("knots")
            if not isinstance(knots, list) or not all(isinstance(k, list) and len(k) == 2 for k in knots):
                raise DocumentError("rho.params.knots: expected [[t, value], ...]")
            return IntegrandSpec.piecewise(
                (_rational(t, f"rho.params.knots[{i}]"), _rational(v, f"rho.params.knots[{i}]"))
                for i, (t, v) in enumerate(knots)
            )
    except DocumentError:
        raise
    except ValueError as exc:
        raise DocumentError(f"rho: {exc}") from None
    raise DocumentError(f"rho.kind: unknown kind {kind!r}")


def instance_from_document(doc: dict, strict: bool = False) -> Instance:
    space = space_from_document(doc, strict)
    for key in ("relation", "map"):
        if key not in doc:
            raise DocumentError(f"{key}: required field missing")
    raw_rel = doc["relation"]
    if not isinstance(raw_rel, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(q, str) for q in p) for p in raw_rel
    ):
        raise DocumentError("relation: expected an array of [label, label] pairs")
    raw_map = doc["map"]
    if not isinstance(raw_map, dict) or not all(isinstance(v, str) for v in raw_map.values()):
        raise DocumentError("map: expected an object label -> label")
    try:
        relation = FiniteRelation.of(space.points, raw_rel)
    except ValueError as exc:
        raise DocumentError(f"relation: {exc}") from None
    try:
        fmap = SelfMap.from_dict(space.points, raw_map)
    except ValueError as exc:
        raise DocumentError(f"map: {exc}") from None
    Y = tuple(_labels(doc["Y"], "Y")) if "Y" in doc else ()
    if "Y" in doc and not Y:
        raise DocumentError("Y: must be nonempty")
    x0 = doc.get("x0")
    if x0 is not None and not isinstance(x0, str):
        raise DocumentError("x0: expected a point label")
    k = _rational(doc["k"], "k") if "k" in doc else None
    rho = rho_from_document(doc["rho"]) if "rho" in doc else None
    try:
        return Instance(space, relation, fmap, Y, x0, k, rho)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def rho_to_document(rho: IntegrandSpec) -> dict:
    if rho.kind == CONSTANT:
        return {"kind": CONSTANT, "params": {"c": str(rho.params[0])}}
    if rho.kind == POWER:
        c, alpha = rho.params
        return {"kind": POWER, "params": {"c": str(c), "alpha": str(alpha)}}
    return {"kind": PIECEWISE, "params": {"knots": [[str(t), str(v)] for t, v in rho.params]}}


def instance_to_document(instance: Instance) -> dict:
    space = instance.space
    pts = space.points
    doc: dict[str, Any] = {
        "points": list(pts),
        "sigma": [[x, y, str(space.dist(x, y))] for i, x in enumerate(pts) for y in pts[i:]],
        "relation": [list(p) for p in instance.relation.sorted_pairs()],
        "map": instance.fmap.as_dict(),
        "Y": list(instance.Y),
    }
    if instance.x0 is not None:
        doc["x0"] = instance.x0
    if instance.k is not None:
        doc["k"] = str(instance.k)
    if instance.rho is not None:
        doc["rho"] = rho_to_document(instance.rho)
    return doc


def _camel(name: str) -> str:
    head, *rest = name.split("_")
    return head + "".join(w.capitalize() for w in rest)


def to_jsonable(value: Any) -> Any:
    """Mirror report objects as plain JSON with stable ordering."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, TailSet):
        return {"members": sorted(value.members), "cauchyValue": to_jsonable(value.cauchy_value)}
    if is_dataclass(value):
        return {_camel(f.name): to_jsonable(getattr(value, f.name)) for f in fields(value)}
    if isinstance(value, (frozenset, set)):
        return sorted(to_jsonable(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        if all(isinstance(k, str) for k in value):
            return {k: to_jsonable(v) for k, v in value.items()}
        return [[*to_jsonable(k if isinstance(k, tuple) else (k,)), to_jsonable(v)] for k, v in value.items()]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def report_document(kind: str, body: Any, extra: Optional[dict] = None) -> dict:
    doc = {"schemaVersion": SCHEMA_VERSION, "kind": kind}
    doc.update(extra or {})
    doc["report"] = to_jsonable(body)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
