"""JSON files for instances and paths.

An instance file holds ``{"n", "faults", "prescribed", "u", "v"}`` with edges as
two-element vertex lists; a path file holds ``{"path": [...]}`` or a bare list.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from ..constraints import Instance, InstanceError, validate_instance
from ..topology import TopologyError


class InputError(ValueError):
    """A malformed input file; the message names the offending line or field."""


def _load(path: str | Path) -> Any:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from None


def _field(doc: dict, name: str, kind: type, where: str) -> Any:
    if name not in doc:
        raise InputError(f"{where}: missing field '{name}'")
    value = doc[name]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise InputError(f"{where}: field '{name}' must be {kind.__name__}")
    return value


def _edges(doc: dict, name: str, where: str) -> list[tuple[str, str]]:
    raw = doc.get(name, [])
    if not isinstance(raw, list):
        raise InputError(f"{where}: field '{name}' must be a list of edges")
    out = []
    for i, e in enumerate(raw):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise InputError(f"{where}: field '{name}[{i}]' must be a pair of vertex strings")
        out.append((e[0], e[1]))
    return out


def instance_from_json(doc: Any, where: str = "instance", enforce_budget: bool = True) -> Instance:
    """Parse and validate; an optional ``budget`` field overrides 2n-2."""
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected a JSON object")
    n = _field(doc, "n", int, where)
    u = _field(doc, "u", str, where)
    v = _field(doc, "v", str, where)
    faults = _edges(doc, "faults", where)
    prescribed = _edges(doc, "prescribed", where)
    budget = _field(doc, "budget", int, where) if "budget" in doc else None
    if not enforce_budget:
        budget = len(faults) + len(prescribed)
    try:
        return validate_instance(n, faults, prescribed, u, v, budget)
    except (InstanceError, TopologyError) as e:
        raise InputError(f"{where}: {e}") from None


def read_instance(path: str | Path, enforce_budget: bool = True) -> Instance:
    return instance_from_json(_load(path), str(path), enforce_budget)


def write_instance(path: str | Path, instance: Instance) -> None:
    Path(path).write_text(json.dumps(instance.to_json(), indent=2) + "\n")


def path_from_json(doc: Any, where: str = "path") -> list[str]:
    if isinstance(doc, dict):
        doc = doc.get("path")
    if not isinstance(doc, list):
        raise InputError(f"{where}: expected a list of vertices or an object with field 'path'")
    for i, w in enumerate(doc):
        if not isinstance(w, str):
            raise InputError(f"{where}: field 'path[{i}]' must be a vertex string")
    return list(doc)


def read_path(path: str | Path) -> list[str]:
    return path_from_json(_load(path), str(path))


def write_path(path: str | Path, vertices: list[str], extra: dict | None = None) -> None:
    doc = {"path": vertices, **(extra or {})}
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")
