"""Choosing the partition dimension, classifying the case, and rotating blocks."""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

from ..constraints import BlockData, Instance, LinearForest, restrict
from ..topology import Edge, PartitionView, Relabeling
from .errors import NoAdmissibleDimension


class Rule(enum.Enum):
    CONCENTRATED_FAULTS = "ConcentratedFaults"
    SPARSE_DIMENSION = "SparseDimension"


class Family(enum.Enum):
    NO_CROSSING = "NoCrossing"
    PRESCRIBED_CROSSING = "PrescribedCrossing"
    FAULT_CROSSING = "FaultCrossing"
    FAULT_CROSSING2 = "FaultCrossing2"


@dataclass(frozen=True)
class DimensionChoice:
    j: int
    rule: Rule
    crossing_fault_count: int
    crossing_prescribed_count: int


def _common_vertex(edges: frozenset[Edge]) -> bool:
    if not edges:
        return False
    shared = set(next(iter(edges)))
    for e in edges:
        shared &= set(e)
    return bool(shared)


def concentrated(instance: Instance) -> bool:
    """|F| = 2n-3 and every faulty edge meets one common vertex."""
    return len(instance.faults) == 2 * instance.n - 3 and _common_vertex(instance.faults)


def admissible_dimensions(instance: Instance) -> list[DimensionChoice]:
    """Every dimension j >= 1 allowed by the partition rules, largest first."""
    h = instance.h
    fdims = Counter(h.edge_dimension(e) for e in instance.faults)
    ldims = Counter(h.edge_dimension(e) for e in instance.forest.edges)
    out = []
    if concentrated(instance):
        rule = Rule.CONCENTRATED_FAULTS
        for j in range(instance.n - 1, 0, -1):
            if fdims[j] >= 1 and ldims[j] == 0:
                out.append(DimensionChoice(j, rule, fdims[j], 0))
    else:
        rule = Rule.SPARSE_DIMENSION
        for j in range(instance.n - 1, 0, -1):
            if fdims[j] + ldims[j] <= 1:
                out.append(DimensionChoice(j, rule, fdims[j], ldims[j]))
    return out


def select_dimension(instance: Instance) -> DimensionChoice:
    choices = admissible_dimensions(instance)
    if not choices:
        raise NoAdmissibleDimension(
            f"no dimension j >= 1 satisfies the partition rule for n={instance.n}; "
            "partitions along dimension 0 are not provided"
        )
    return choices[0]


@dataclass(frozen=True)
class CaseTag:
    family: Family
    load: int
    bucket: str
    placement: tuple[int, int]

    def __str__(self) -> str:
        i, j = self.placement
        return f"{self.family.value}/{self.bucket}/u@B{i},v@B{j}"


def load_bucket(n: int, load: int) -> str:
    if load <= 2 * n - 6:
        return "<=2n-6"
    return f"2n-{2 * n - load}"


def classify(blocks: BlockData, u: str, v: str) -> CaseTag:
    nf, nl = len(blocks.crossing_faults), len(blocks.crossing_prescribed)
    if nl == 0 and nf == 0:
        fam = Family.NO_CROSSING
    elif nl == 1 and nf == 0:
        fam = Family.PRESCRIBED_CROSSING
    elif nl == 0 and nf == 1:
        fam = Family.FAULT_CROSSING
    elif nl == 0 and nf == 2:
        fam = Family.FAULT_CROSSING2
    else:
        raise ValueError(f"crossing sets |L^c|={nl}, |F^c|={nf} do not match any case")
    view = blocks.view
    load = blocks.load(0)
    return CaseTag(fam, load, load_bucket(view.h.n, load), (view.block_of(u), view.block_of(v)))


@dataclass(frozen=True)
class Normalized:
    shift: int
    relabel: Relabeling
    instance: Instance
    blocks: BlockData


def relabel_instance(instance: Instance, r: Relabeling) -> Instance:
    return Instance(
        instance.n,
        frozenset(r.edge(e) for e in instance.faults),
        LinearForest(frozenset(r.edge(e) for e in instance.forest.edges)),
        r(instance.u),
        r(instance.v),
        instance.budget,
    )


def normalize_blocks(instance: Instance, view: PartitionView, blocks: BlockData | None = None) -> Normalized:
    """Shift digit j so that block 0 carries the largest load; smallest shift wins ties."""
    blocks = blocks or restrict(instance, view)
    loads = blocks.loads
    best = max(loads)
    c = min((-m) % 4 for m in range(4) if loads[m] == best)
    r = view.h.digit_shift_automorphism(view.j, c)
    moved = relabel_instance(instance, r)
    nb = restrict(moved, view)
    assert nb.load(0) == best
    return Normalized(c, r, moved, nb)
