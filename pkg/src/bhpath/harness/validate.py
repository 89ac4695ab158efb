"""Independent re-check of a claimed hamiltonian path.

Deliberately written against the raw adjacency of BH_n only; nothing here is shared
with the constructor's splice logic.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from ..constraints import Instance
from ..topology import BalancedHypercube, make_edge


class ViolationKind(enum.Enum):
    NOT_HAMILTONIAN = "NotHamiltonian"
    NON_EDGE_STEP = "NonEdgeStep"
    USES_FAULT = "UsesFault"
    MISSES_PRESCRIBED = "MissesPrescribed"
    WRONG_ENDPOINTS = "WrongEndpoints"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    detail: str

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "detail": self.detail}


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[ViolationKind]:
        return {v.kind for v in self.violations}

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}


def validate_path(instance: Instance, path: Sequence[str]) -> ValidationReport:
    """Check a path against an instance; never raises on bad input."""
    report = ValidationReport()
    add = lambda kind, detail: report.violations.append(Violation(kind, detail))  # noqa: E731
    h = BalancedHypercube(instance.n)
    names = set(h.names)
    counts = Counter(path)
    missing = names - counts.keys()
    extra = sorted(w for w in counts if w not in names)
    repeated = sorted(w for w, c in counts.items() if c > 1 and w in names)
    if missing or extra or repeated:
        add(
            ViolationKind.NOT_HAMILTONIAN,
            f"missing={len(missing)} repeated={repeated[:5]} unknown={extra[:5]}",
        )
    steps = set()
    for a, b in zip(path, path[1:]):
        if a not in names or b not in names or not h.is_edge(a, b):
            add(ViolationKind.NON_EDGE_STEP, f"{a}-{b}")
            continue
        steps.add(make_edge(a, b))
    for e in sorted(steps & instance.faults):
        add(ViolationKind.USES_FAULT, f"{e[0]}-{e[1]}")
    for e in sorted(instance.forest.edges - steps):
        add(ViolationKind.MISSES_PRESCRIBED, f"{e[0]}-{e[1]}")
    ends = {path[0], path[-1]} if path else set()
    if ends != {instance.u, instance.v}:
        add(ViolationKind.WRONG_ENDPOINTS, f"got {sorted(ends)}, want {sorted({instance.u, instance.v})}")
    return report
