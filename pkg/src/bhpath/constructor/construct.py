"""The recursive constructor: partition, splice block paths, recurse on BH_{n-1}."""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from functools import lru_cache

from ..constraints import Instance, LinearForest
from ..harness.validate import validate_path
from ..solvers import SearchBudgetExceeded, ham_path
from ..topology import BalancedHypercube, Edge, Vertex, is_even, make_edge
from .dimension import DimensionChoice, Family, admissible_dimensions, classify, normalize_blocks
from .engine import EngineStats, Limits, SpliceEngine
from .errors import (
    ConstructionError,
    ConstructionFailure,
    Infeasible,
    NoAdmissibleDimension,
    UnsupportedCase,
)
from .lemmas import LemmaContext

HamPath = list[Vertex]


@dataclass
class Trace:
    """What fired while building one path (top level only; sub-calls are counted)."""

    n: int
    method: str = "splice"
    dimension: DimensionChoice | None = None
    case: str | None = None
    shift: int = 0
    route: str | None = None
    modes: dict[int, str] = field(default_factory=dict)
    tried: list[str] = field(default_factory=list)
    subcalls: int = 0

    def to_json(self) -> dict:
        d = self.dimension
        return {
            "n": self.n,
            "method": self.method,
            "dimension": None if d is None else {"j": d.j, "rule": d.rule.value},
            "case": self.case,
            "shift": self.shift,
            "route": self.route,
            "modes": {str(k): v for k, v in sorted(self.modes.items())},
            "tried": self.tried,
            "subcalls": self.subcalls,
        }


@dataclass
class Construction:
    path: HamPath
    trace: Trace


def _seed(instance: Instance) -> int:
    blob = json.dumps(instance.to_json(), sort_keys=True).encode()
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big")


def _oracle(instance: Instance, node_budget: int | None) -> HamPath:
    found = ham_path(instance.h, instance.faults, instance.forest, instance.u, instance.v, node_budget)
    if found is None:
        raise Infeasible(f"BH_{instance.n} has no hamiltonian {instance.u}-{instance.v} path here")
    return found


@lru_cache(maxsize=50_000)
def _sub_solve(n: int, faults: frozenset[Edge], edges: frozenset[Edge], u: Vertex, v: Vertex) -> tuple | None:
    inst = Instance(n, faults, LinearForest(edges), u, v)
    try:
        return tuple(build(inst).path)
    except UnsupportedCase:
        # a block whose constraints leave only dimension 0: the exhaustive solver
        # stands in, which the block sizes allowed here (BH_3 and below) afford
        if n > 3:
            return None
        try:
            found = ham_path(inst.h, faults, inst.forest, u, v)
        except SearchBudgetExceeded:
            return None
        return None if found is None else tuple(found)
    except (ConstructionFailure, Infeasible):
        return None


def _sub(inst: Instance) -> HamPath | None:
    found = _sub_solve(inst.n, inst.faults, inst.forest.edges, inst.u, inst.v)
    return None if found is None else list(found)


def build(instance: Instance, node_budget: int | None = None, limits: Limits = Limits()) -> Construction:
    """Construct a path for ``instance`` and report how it was obtained."""
    if not is_even(instance.u):
        flipped = Instance(instance.n, instance.faults, instance.forest, instance.v, instance.u, instance.budget)
        res = build(flipped, node_budget, limits)
        return Construction(res.path[::-1], res.trace)
    trace = Trace(instance.n)
    if instance.n <= 2:
        trace.method = "oracle"
        return Construction(_oracle(instance, node_budget), trace)
    choices = admissible_dimensions(instance)
    if not choices:
        raise NoAdmissibleDimension(
            f"no dimension j >= 1 satisfies the partition rule for this BH_{instance.n} instance; "
            "partitions along dimension 0 are not provided"
        )
    h = instance.h
    stats = EngineStats()
    crossing2 = None
    for choice in choices:
        norm = normalize_blocks(instance, h.partition(choice.j))
        u, v = norm.instance.u, norm.instance.v
        tag = classify(norm.blocks, u, v)
        if tag.family is Family.FAULT_CROSSING2:
            crossing2 = crossing2 or (choice, tag)
            trace.tried.append(f"j={choice.j}: {tag} skipped")
            continue
        ctx = LemmaContext.from_blocks(norm.blocks, u, v)
        engine = SpliceEngine(ctx, _sub, random.Random(_seed(instance) + choice.j), limits, stats)
        plan = None
        routes = list(engine.routes())
        for _ in range(limits.rounds):
            for route, fixed in routes:
                plan = engine.plan(route, fixed)
                if plan is not None or engine.solver.exhausted():
                    break
            if plan is not None or engine.solver.exhausted():
                break
        if plan is None:
            trace.tried.append(f"j={choice.j}: {tag} no plan")
            stats.subcalls = 0
            continue
        back = norm.relabel.inverse()
        path = [back(w) for w in plan.assemble()]
        report = validate_path(instance, path)
        if not report.ok:
            raise ConstructionError(f"splice produced an invalid path: {report.to_json()}")
        trace.dimension, trace.case, trace.shift = choice, str(tag), norm.shift
        trace.route, trace.modes, trace.subcalls = str(plan.route), plan.modes, stats.subcalls
        return Construction(path, trace)
    if crossing2 is not None:
        choice, tag = crossing2
        if instance.n <= 3:
            trace.method, trace.dimension, trace.case = "oracle", choice, str(tag)
            return Construction(_oracle(instance, node_budget), trace)
        raise UnsupportedCase(f"{tag}: two faulty crossing edges are not constructed for n > 3")
    raise ConstructionFailure(
        "no route could be spliced in any admissible dimension",
        {"instance": instance.to_json(), "tried": trace.tried},
    )


def construct(instance: Instance, node_budget: int | None = None) -> HamPath:
    """A hamiltonian u-v path of BH_n - F through L, built by partition and splice."""
    return build(instance, node_budget).path


# -- the two heavy-block constructions as stand-alone operations ---------------


def hcycle_block(h: BalancedHypercube, forest: LinearForest, faults: frozenset[Edge]) -> HamPath:
    """An H-cycle of a block through ``forest`` avoiding ``faults`` when the load is 2m-1.

    ``h`` is the block itself (BH_m).  One prescribed edge (x,y) is set aside, an
    H-path x→y through the rest is built recursively, and (x,y) closes it.  The
    cycle is returned as a vertex list without repeating its start.
    """
    load = len(forest) + len(faults)
    if load != 2 * h.n - 1:
        raise ValueError(f"H-cycle lemma needs load {2 * h.n - 1}, got {load}")
    if not forest.edges:
        raise ValueError("H-cycle lemma needs at least one prescribed edge")
    x, y = min(forest.edges)
    rest = forest.minus((x, y))
    if not is_even(x):
        x, y = y, x
    found = _sub(Instance(h.n, frozenset(faults), rest, x, y, 2 * h.n - 2))
    if found is None:
        raise ConstructionFailure("no H-path between the ends of the set-aside edge", {"edge": [x, y]})
    return found


def hpath_from_faulty_block(
    h: BalancedHypercube, forest: LinearForest, faults: frozenset[Edge]
) -> tuple[HamPath, Vertex, Vertex]:
    """An H-path of a block through ``forest`` avoiding ``faults`` when the load is 2m.

    One fault f is withheld and the H-cycle lemma applied to the rest; the cycle is
    opened at f when it uses f, otherwise at any non-prescribed edge.  Returns the
    path and its even and odd end.
    """
    load = len(forest) + len(faults)
    if load != 2 * h.n:
        raise ValueError(f"expected load {2 * h.n}, got {load}")
    if not faults:
        raise ValueError("the faulty-block construction needs a faulty edge")
    for f in sorted(faults):
        rest = frozenset(faults) - {f}
        if forest.edges:
            try:
                cyc = hcycle_block(h, forest, rest)
            except ConstructionFailure:
                continue
        else:
            # no prescribed edge to open at: withhold a second fault and open at any edge
            cyc = None
            for g in sorted(rest):
                fewer = rest - {g}
                a = h.names[0]
                for b in h.neighbors(a):
                    if make_edge(a, b) in fewer:
                        continue
                    x, y = (a, b) if is_even(a) else (b, a)
                    cyc = _sub(Instance(h.n, fewer, forest, x, y, 2 * h.n - 2))
                    if cyc is not None:
                        break
                if cyc is not None:
                    ring = [make_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]
                    if g not in ring:
                        break
                    if f not in ring:
                        f, g = g, f
                        break
                    cyc = None
            if cyc is None:
                continue
        size = len(cyc)
        ring = [make_edge(cyc[i], cyc[(i + 1) % size]) for i in range(size)]
        if f in ring:
            cut = ring.index(f)
        else:
            cut = next(i for i, e in enumerate(ring) if e not in forest.edges)
        path = cyc[cut + 1 :] + cyc[: cut + 1]
        a, b = (path[0], path[-1]) if is_even(path[0]) else (path[-1], path[0])
        return path, a, b
    raise ConstructionFailure("no withheld fault produced a usable cycle", {"faults": sorted(faults)})
