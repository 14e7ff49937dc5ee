"""JSON file formats for instances, plans, 3-partition inputs and reduction metadata.

All readers are strict: missing fields, unknown fields and wrongly typed
values raise :class:`FormatError`.

Instance::

    {"page_size": 3, "versions": [{"id": 1, "group": "P", "citations": 8}, ...]}

``id`` is optional per entry; if no entry carries one, ids are 1..n in file
order.  Mixing entries with and without ids is rejected.

Plan: ``{"steps": [[a, b], ...]}``.  3-partition instance: ``{"a": [...],
"B": n}``.  3-partition solution: ``{"triples": [[i, j, k], ...]}`` with
1-based indices.  Reduction metadata: see :func:`dump_meta`.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .core import MergeAction, ProfileState, Version
from .reduction import ReducedInstance
from .tpart import ThreePartitionInstance, ThreePartitionSolution


class FormatError(ValueError):
    pass


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _fields(obj: Any, required: set[str], optional: set[str] = frozenset(), what: str = "document"):
    if not isinstance(obj, dict):
        raise FormatError(f"{what} must be a JSON object")
    missing = required - obj.keys()
    if missing:
        raise FormatError(f"{what} is missing field(s) {sorted(missing)}")
    unknown = obj.keys() - required - optional
    if unknown:
        raise FormatError(f"{what} has unknown field(s) {sorted(unknown)}")


def _int(x, what: str, minimum: int | None = None) -> int:
    if not _is_int(x):
        raise FormatError(f"{what} must be an integer, got {x!r}")
    if minimum is not None and x < minimum:
        raise FormatError(f"{what} must be >= {minimum}, got {x}")
    return x


def _int_list(xs, what: str, minimum: int | None = None) -> list[int]:
    if not isinstance(xs, list):
        raise FormatError(f"{what} must be a list")
    return [_int(x, f"{what}[{k}]", minimum) for k, x in enumerate(xs)]


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None


def read(path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def write(path, obj) -> None:
    Path(path).write_text(dumps(obj))


def dumps(obj) -> str:
    """JSON with one list element per line, e.g. one version or one merge step."""
    if not isinstance(obj, dict):
        return json.dumps(obj) + "\n"
    fields = []
    for k, v in obj.items():
        if isinstance(v, list) and v:
            body = ",\n  ".join(json.dumps(x) for x in v)
            fields.append(f" {json.dumps(k)}: [\n  {body}\n ]")
        else:
            fields.append(f" {json.dumps(k)}: {json.dumps(v)}")
    return "{\n" + ",\n".join(fields) + "\n}\n"


# -- instances ---------------------------------------------------------------

def parse_instance(obj, page_size: int | None = None, tie_order: str = "asc") -> ProfileState:
    _fields(obj, {"page_size", "versions"}, what="instance")
    p = _int(obj["page_size"], "page_size", 1)
    if page_size is not None:
        p = page_size
    entries = obj["versions"]
    if not isinstance(entries, list):
        raise FormatError("versions must be a list")
    has_id = [isinstance(e, dict) and "id" in e for e in entries]
    if any(has_id) and not all(has_id):
        raise FormatError("either every version carries an id or none does")
    versions = []
    for k, e in enumerate(entries, start=1):
        what = f"versions[{k - 1}]"
        _fields(e, {"group", "citations"}, {"id"}, what=what)
        group = e["group"]
        if not isinstance(group, str):
            raise FormatError(f"{what}.group must be a string, got {group!r}")
        vid = _int(e["id"], f"{what}.id", 1) if "id" in e else k
        versions.append(Version(vid, group, _int(e["citations"], f"{what}.citations", 0)))
    if len({v.id for v in versions}) != len(versions):
        raise FormatError("version ids must be unique")
    return ProfileState(tuple(versions), p, tie_order=tie_order)


def dump_instance(state: ProfileState) -> dict:
    versions = sorted(state.versions, key=lambda v: v.id)
    return {
        "page_size": state.page_size,
        "versions": [{"id": v.id, "group": str(v.group), "citations": v.citations} for v in versions],
    }


# -- plans -------------------------------------------------------------------

def parse_plan(obj) -> list[MergeAction]:
    _fields(obj, {"steps"}, what="plan")
    steps = obj["steps"]
    if not isinstance(steps, list):
        raise FormatError("steps must be a list")
    plan = []
    for k, s in enumerate(steps):
        if not isinstance(s, list) or len(s) != 2:
            raise FormatError(f"steps[{k}] must be a pair [id_a, id_b]")
        a, b = (_int(x, f"steps[{k}]", 1) for x in s)
        if a == b:
            raise FormatError(f"steps[{k}] merges version {a} with itself")
        plan.append(MergeAction(a, b))
    return plan


def dump_plan(plan) -> dict:
    return {"steps": [[a, b] for a, b in plan]}


# -- 3-partition -------------------------------------------------------------

def parse_tp(obj) -> ThreePartitionInstance:
    _fields(obj, {"a", "B"}, what="3-partition instance")
    return ThreePartitionInstance(tuple(_int_list(obj["a"], "a")), _int(obj["B"], "B"))


def dump_tp(tp: ThreePartitionInstance) -> dict:
    return {"a": list(tp.a), "B": tp.B}


def parse_solution(obj) -> ThreePartitionSolution:
    _fields(obj, {"triples"}, what="3-partition solution")
    triples = obj["triples"]
    if not isinstance(triples, list):
        raise FormatError("triples must be a list")
    return ThreePartitionSolution(tuple(tuple(_int_list(t, f"triples[{k}]", 1)) for k, t in enumerate(triples)))


def dump_solution(sol: ThreePartitionSolution) -> dict:
    return {"triples": [list(t) for t in sol.triples]}


# -- reduction metadata ------------------------------------------------------

META_FIELDS = {"m", "B", "B2", "D", "x_ids", "y_ids", "z_ids", "single_ids"}


def dump_meta(reduced: ReducedInstance) -> dict:
    """Role maps as lists: ``x_ids[j - 1]`` is the id of X_j, likewise for Y and Z."""
    return {
        "m": reduced.m,
        "B": reduced.B,
        "B2": reduced.B2,
        "D": reduced.D,
        "x_ids": [reduced.x_ids[j] for j in sorted(reduced.x_ids)],
        "y_ids": [reduced.y_ids[i] for i in sorted(reduced.y_ids)],
        "z_ids": [reduced.z_ids[i] for i in sorted(reduced.z_ids)],
        "single_ids": list(reduced.single_ids),
    }


def parse_meta(obj, state: ProfileState) -> ReducedInstance:
    _fields(obj, META_FIELDS, what="reduction metadata")
    m = _int(obj["m"], "m", 1)
    B2 = _int(obj["B2"], "B2", 1)
    if _int(obj["B"], "B", 1) * 2 != B2:
        raise FormatError("B2 must equal 2*B")
    D = _int(obj["D"], "D", 1)
    roles = {}
    for name, n in (("x_ids", 3 * m), ("y_ids", m), ("z_ids", m)):
        ids = _int_list(obj[name], name, 1)
        if len(ids) != n:
            raise FormatError(f"{name} must list {n} ids, got {len(ids)}")
        roles[name] = {k: vid for k, vid in enumerate(ids, start=1)}
    singles = _int_list(obj["single_ids"], "single_ids", 1)
    for vid in [*singles, *(v for r in roles.values() for v in r.values())]:
        if vid not in state:
            raise FormatError(f"metadata refers to id {vid}, which is not in the instance")
    return ReducedInstance(state, m, B2, D, roles["x_ids"], roles["y_ids"], roles["z_ids"], singles)
