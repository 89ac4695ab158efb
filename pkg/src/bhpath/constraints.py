"""Faulty edges, prescribed linear forests, compatibility and block restriction."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .topology import BalancedHypercube, Edge, PartitionView, Vertex, is_even, make_edge


class InstanceError(ValueError):
    pass


class NotAForest(InstanceError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class BudgetExceeded(InstanceError):
    pass


class FaultForestOverlap(InstanceError):
    pass


class SameParityEndpoints(InstanceError):
    pass


class Incompatible(InstanceError):
    pass


@dataclass(frozen=True)
class LinearForest:
    """A vertex-disjoint union of paths, stored as its edge set.

    Singleton vertices are not represented.  Construct through
    :func:`validate_linear_forest` or :meth:`from_edges` to get the checks.
    """

    edges: frozenset[Edge] = frozenset()

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[Vertex]]) -> "LinearForest":
        es = frozenset(make_edge(*e) for e in edges)
        forest = cls(es)
        reason = forest._violation()
        if reason:
            raise NotAForest(reason)
        return forest

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, e: object) -> bool:
        return isinstance(e, tuple) and len(e) == 2 and make_edge(*e) in self.edges

    @cached_property
    def adjacency(self) -> dict[Vertex, tuple[Vertex, ...]]:
        adj: dict[Vertex, list[Vertex]] = defaultdict(list)
        for a, b in sorted(self.edges):
            adj[a].append(b)
            adj[b].append(a)
        return {v: tuple(sorted(ws)) for v, ws in adj.items()}

    def degree(self, v: Vertex) -> int:
        return len(self.adjacency.get(v, ()))

    def _violation(self) -> str | None:
        for v, ws in sorted(self.adjacency.items()):
            if len(ws) > 2:
                return f"degree > 2 at vertex {v}"
        seen: set[Vertex] = set()
        for v in sorted(self.adjacency):
            if v in seen:
                continue
            comp = {v}
            stack = [v]
            while stack:
                x = stack.pop()
                for w in self.adjacency[x]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            n_edges = sum(len(self.adjacency[x]) for x in comp) // 2
            if n_edges != len(comp) - 1:
                return f"cycle through vertex {min(comp)}"
        return None

    @cached_property
    def paths(self) -> tuple[tuple[Vertex, ...], ...]:
        """Maximal paths, each listed from its lexicographically smaller end."""
        out = []
        done: set[Vertex] = set()
        for v in sorted(self.adjacency):
            if v in done or self.degree(v) != 1:
                continue
            path = [v]
            prev, cur = None, v
            while True:
                nxt = [w for w in self.adjacency[cur] if w != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                path.append(cur)
            done.update(path)
            if path[0] > path[-1]:
                path.reverse()
            out.append(tuple(path))
        out.sort()
        return tuple(out)

    @cached_property
    def internal_vertices(self) -> frozenset[Vertex]:
        return frozenset(v for v, ws in self.adjacency.items() if len(ws) == 2)

    @cached_property
    def end_vertices(self) -> frozenset[Vertex]:
        return frozenset(v for v, ws in self.adjacency.items() if len(ws) == 1)

    @cached_property
    def vertices(self) -> frozenset[Vertex]:
        return frozenset(self.adjacency)

    @cached_property
    def _path_of(self) -> dict[Vertex, tuple[Vertex, ...]]:
        return {v: p for p in self.paths for v in p}

    def path_through(self, v: Vertex) -> tuple[Vertex, ...] | None:
        return self._path_of.get(v)

    def other_end(self, v: Vertex) -> Vertex | None:
        """The far end of the maximal path that has ``v`` as an end vertex."""
        p = self._path_of.get(v)
        if p is None or v not in (p[0], p[-1]):
            return None
        return p[-1] if p[0] == v else p[0]

    def can_add(self, e: Iterable[Vertex]) -> bool:
        """Whether adding the edge keeps a linear forest (and the edge is new)."""
        a, b = e
        if a == b or make_edge(a, b) in self.edges:
            return False
        if self.degree(a) >= 2 or self.degree(b) >= 2:
            return False
        # both already in the forest: must not be the two ends of one path
        return not (a in self._path_of and self.other_end(a) == b)

    def plus(self, *edges: Iterable[Vertex]) -> "LinearForest":
        return LinearForest.from_edges(list(self.edges) + [tuple(e) for e in edges])

    def minus(self, *edges: Iterable[Vertex]) -> "LinearForest":
        drop = {make_edge(*e) for e in edges}
        return LinearForest(self.edges - drop)

    def to_json(self) -> list[list[Vertex]]:
        return [list(e) for e in sorted(self.edges)]


EMPTY_FOREST = LinearForest()


def validate_linear_forest(h: BalancedHypercube, edges: Iterable[Iterable[Vertex]]) -> LinearForest:
    pairs = [tuple(e) for e in edges]
    for a, b in pairs:
        h.check_edge(a, b)
    return LinearForest.from_edges(pairs)


def compatible(forest: LinearForest, u: Vertex, v: Vertex) -> bool:
    """True iff neither u nor v is internal to ``forest`` and no path of it joins u to v."""
    if u in forest.internal_vertices or v in forest.internal_vertices:
        return False
    return forest.other_end(u) != v


@dataclass(frozen=True)
class Instance:
    n: int
    faults: frozenset[Edge]
    forest: LinearForest
    u: Vertex
    v: Vertex
    budget: int = -1

    def __post_init__(self) -> None:
        if self.budget < 0:
            object.__setattr__(self, "budget", 2 * self.n - 2)

    @property
    def h(self) -> BalancedHypercube:
        return BalancedHypercube(self.n)

    @property
    def load(self) -> int:
        return len(self.faults) + len(self.forest)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "faults": [list(e) for e in sorted(self.faults)],
            "prescribed": self.forest.to_json(),
            "u": self.u,
            "v": self.v,
        }


def validate_instance(
    n: int,
    faults: Iterable[Iterable[Vertex]],
    prescribed: Iterable[Iterable[Vertex]],
    u: Vertex,
    v: Vertex,
    budget: int | None = None,
) -> Instance:
    """Check every instance invariant; returns the instance with ``u`` even."""
    h = BalancedHypercube(n)
    fault_set = frozenset(h.check_edge(*e) for e in faults)
    forest = validate_linear_forest(h, prescribed)
    h.check_vertex(u)
    h.check_vertex(v)
    limit = 2 * n - 2 if budget is None else budget
    if fault_set & forest.edges:
        raise FaultForestOverlap(f"edges both faulty and prescribed: {sorted(fault_set & forest.edges)}")
    if len(fault_set) + len(forest) > limit:
        raise BudgetExceeded(
            f"|F|+|E(L)| = {len(fault_set) + len(forest)} exceeds the budget {limit}"
        )
    if is_even(u) == is_even(v):
        raise SameParityEndpoints(f"{u} and {v} lie in the same part")
    if not is_even(u):
        u, v = v, u
    if not compatible(forest, u, v):
        raise Incompatible(f"{{{u}, {v}}} is not compatible to the prescribed forest")
    return Instance(n, fault_set, forest, u, v, limit)


@dataclass(frozen=True)
class BlockData:
    """F and E(L) split into the four blocks of a partition plus the crossing sets."""

    view: PartitionView
    forests: tuple[LinearForest, LinearForest, LinearForest, LinearForest]
    faults: tuple[frozenset[Edge], frozenset[Edge], frozenset[Edge], frozenset[Edge]]
    crossing_prescribed: frozenset[Edge] = field(default_factory=frozenset)
    crossing_faults: frozenset[Edge] = field(default_factory=frozenset)

    def load(self, i: int) -> int:
        return len(self.forests[i % 4]) + len(self.faults[i % 4])

    @property
    def loads(self) -> tuple[int, int, int, int]:
        return tuple(self.load(i) for i in range(4))  # type: ignore[return-value]


def restrict(instance: Instance, view: PartitionView) -> BlockData:
    forests: list[list[Edge]] = [[], [], [], []]
    faults: list[set[Edge]] = [set(), set(), set(), set()]
    lc, fc = set(), set()
    for e in instance.forest.edges:
        if view.is_crossing(e):
            lc.add(e)
        else:
            forests[view.block_of(e[0])].append(e)
    for e in instance.faults:
        if view.is_crossing(e):
            fc.add(e)
        else:
            faults[view.block_of(e[0])].add(e)
    return BlockData(
        view,
        tuple(LinearForest(frozenset(es)) for es in forests),  # type: ignore[arg-type]
        tuple(frozenset(fs) for fs in faults),  # type: ignore[arg-type]
        frozenset(lc),
        frozenset(fc),
    )
