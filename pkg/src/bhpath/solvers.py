"""Exhaustive backtracking oracles for hamiltonian paths, cycles and path covers.

All searches share one depth-first core over integer vertex ids.  Prescribed
edges act as forced arcs, faulty edges are deleted, and a branch is cut as soon
as an untouched vertex is left with too few usable neighbours, or (on the last
path) when the untouched vertices stop being connected or parity-balanced.
Single-path searches rotate through a fixed set of variants (either end first,
lexicographic or fewest-exits neighbour order) with growing node slices, so
results are deterministic.
"""
from __future__ import annotations

import itertools
import os
import sys
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .constraints import (
    EMPTY_FOREST,
    Instance,
    InstanceError,
    LinearForest,
    compatible,
)
from .topology import BalancedHypercube, Edge, Vertex, is_even, make_edge

DEFAULT_NODE_BUDGET = int(os.environ.get("BHPATH_NODE_BUDGET", 10_000_000))


class SearchBudgetExceeded(RuntimeError):
    """The node budget ran out before the search space was exhausted."""


class PreconditionError(ValueError):
    pass


HamPath = list[Vertex]


class _Search:
    """Cover the graph by vertex-disjoint paths joining the given terminal pairs."""

    def __init__(
        self,
        h: BalancedHypercube,
        faults: Iterable[Edge],
        forced: Iterable[Edge],
        pairs: Sequence[tuple[int, int]],
        removed: Iterable[int] = (),
        node_budget: int | None = None,
        prune: bool = True,
        fewest_first: bool = False,
    ):
        self.size = h.order
        self.use_prune = prune
        self.fewest_first = fewest_first
        masks = list(h.adjacency_masks)
        for a, b in faults:
            ia, ib = h.index(a), h.index(b)
            masks[ia] &= ~(1 << ib)
            masks[ib] &= ~(1 << ia)
        gone = 0
        for r in removed:
            gone |= 1 << r
        if gone:
            masks = [m & ~gone for m in masks]
        self.masks = masks
        self.nbrs = [tuple(w for w in h.adjacency[x] if masks[x] >> w & 1) for x in range(self.size)]
        fm = [0] * self.size
        for a, b in forced:
            ia, ib = h.index(a), h.index(b)
            fm[ia] |= 1 << ib
            fm[ib] |= 1 << ia
        self.forced = fm
        self.pairs = list(pairs)
        self.removed = gone
        # removed vertices start out visited, so a full cover sets every bit
        self.full = (1 << self.size) - 1
        self.budget = DEFAULT_NODE_BUDGET if node_budget is None else node_budget
        self.expanded = 0
        terminals = 0
        for s, t in self.pairs:
            terminals |= (1 << s) | (1 << t)
        self.terminals = terminals
        self.even_mask = sum(1 << x for x, name in enumerate(h.names) if is_even(name))

    def run(self) -> list[list[int]] | None:
        pairs = self.pairs
        if not pairs:
            return None
        seen_t = 0
        for s, t in pairs:
            if s == t or (seen_t >> s & 1) or (seen_t >> t & 1) or (self.removed >> s & 1) or (self.removed >> t & 1):
                return None
            seen_t |= (1 << s) | (1 << t)
        for x in range(self.size):
            if self.removed >> x & 1:
                if self.forced[x]:
                    return None
                continue
            if self.forced[x] & ~self.masks[x]:
                # a prescribed edge is faulty or leads to a deleted vertex
                return None
            if bin(self.forced[x]).count("1") > (1 if seen_t >> x & 1 else 2):
                return None
        old = sys.getrecursionlimit()
        if old < 4 * self.size + 200:
            sys.setrecursionlimit(4 * self.size + 200)
        s0 = pairs[0][0]
        future = 0
        for s, t in pairs[1:]:
            future |= (1 << s) | (1 << t)
        self.paths: list[list[int]] = [[s0]]
        if self._extend(s0, -1, 0, self.removed | (1 << s0), future):
            return self.paths
        return None

    def _start_segment(self, m: int, visited: int) -> bool:
        s, _ = self.pairs[m]
        future = 0
        for s2, t2 in self.pairs[m + 1 :]:
            future |= (1 << s2) | (1 << t2)
        self.paths.append([s])
        if self._extend(s, -1, m, visited | (1 << s), future):
            return True
        self.paths.pop()
        return False

    def _extend(self, c: int, prev: int, m: int, visited: int, future: int) -> bool:
        self.expanded += 1
        if self.expanded > self.budget:
            raise SearchBudgetExceeded(f"node budget {self.budget} exhausted")
        target = self.pairs[m][1]
        masks = self.masks
        forced = self.forced
        unvisited = self.full & ~visited
        fc = forced[c] & unvisited
        if fc:
            if fc & (fc - 1):
                return False
            cands = (fc.bit_length() - 1,)
        elif self.fewest_first:
            # fewest onward exits first, ties in lexicographic order
            cands = sorted(self.nbrs[c], key=lambda w: (bin(masks[w] & unvisited).count("1"), w))
        else:
            cands = self.nbrs[c]
        blocked = visited | future
        path = self.paths[-1]
        for w in cands:
            if blocked >> w & 1:
                continue
            fw = forced[w] & ~(1 << c)
            if w == target:
                if fw:
                    continue
                nv = visited | (1 << w)
                if not self._prune(c, w, nv, m):
                    continue
                path.append(w)
                if m + 1 == len(self.pairs):
                    if nv == self.full:
                        return True
                elif self._start_segment(m + 1, nv):
                    return True
                path.pop()
                continue
            if fw & visited or (fw & (fw - 1)):
                continue
            nv = visited | (1 << w)
            if nv == self.full:
                continue
            if not self._prune(c, w, nv, m):
                continue
            path.append(w)
            if self._extend(w, c, m, nv, future):
                return True
            path.pop()
        return False

    def _prune(self, c: int, w: int, nv: int, m: int) -> bool:
        """Every untouched neighbour of the retired vertex ``c`` must keep enough exits."""
        if not self.use_prune:
            return True
        unvisited = self.full & ~nv
        avail = unvisited | (1 << w)
        masks = self.masks
        terminals = self.terminals
        x_iter = masks[c] & unvisited
        while x_iter:
            low = x_iter & -x_iter
            x = low.bit_length() - 1
            x_iter ^= low
            k = bin(masks[x] & avail).count("1")
            if k < (1 if terminals >> x & 1 else 2):
                return False
        if m + 1 == len(self.pairs):
            return self._one_piece(w, unvisited)
        return True

    def _one_piece(self, w: int, unvisited: int) -> bool:
        """On the last segment the rest must be one connected, parity-balanced stretch."""
        if not unvisited:
            return True
        evens = bin(unvisited & self.even_mask).count("1")
        odds = bin(unvisited).count("1") - evens
        # the vertices after w alternate parity, starting opposite to w
        first_even = not (self.even_mask >> w & 1)
        lead, trail = (evens, odds) if first_even else (odds, evens)
        if lead - trail not in (0, 1):
            return False
        masks = self.masks
        reached = masks[w] & unvisited
        frontier = reached
        while frontier:
            grow = 0
            while frontier:
                low = frontier & -frontier
                grow |= masks[low.bit_length() - 1]
                frontier ^= low
            frontier = grow & unvisited & ~reached
            reached |= frontier
        return reached == unvisited


FIRST_SLICE = 20_000


def _pair_search(
    h: BalancedHypercube,
    faults: Iterable[Edge],
    forced: Iterable[Edge],
    s: int,
    t: int,
    removed: Iterable[int] = (),
    node_budget: int | None = None,
) -> list[int] | None:
    """One covering s-t path, found by a round robin of four search variants.

    A search can stall for millions of nodes where a sibling finishes at once:
    starting from the other end, or trying the neighbour with the fewest exits
    first instead of the lexicographically smallest.  The variants take turns,
    each round with four times the node slice of the last.  A slice that ends
    without a path settles the question; only the total is bounded by the budget.
    """
    faults, forced, removed = list(faults), list(forced), list(removed)
    left = DEFAULT_NODE_BUDGET if node_budget is None else node_budget
    step = FIRST_SLICE
    variants = [(s, t, False), (t, s, False), (s, t, True), (t, s, True)]
    while True:
        for a, b, fewest in variants:
            slice_ = min(step, left)
            search = _Search(
                h, faults, forced, [(a, b)], removed=removed, node_budget=slice_, fewest_first=fewest
            )
            try:
                found = search.run()
            except SearchBudgetExceeded:
                left -= slice_
                if left <= 0:
                    raise SearchBudgetExceeded("node budget exhausted by every search variant") from None
                continue
            if found is None:
                return None
            path = found[0]
            return path if a == s else path[::-1]
        step *= 4


def _ids(h: BalancedHypercube, vs: Iterable[Vertex]) -> list[int]:
    return [h.index(h.check_vertex(v)) for v in vs]


def _names(h: BalancedHypercube, path: list[int]) -> list[Vertex]:
    names = h.names
    return [names[i] for i in path]


def _edge_set(h: BalancedHypercube, edges: Iterable[Iterable[Vertex]]) -> frozenset[Edge]:
    return frozenset(h.check_edge(*e) for e in edges)


def _forest(h: BalancedHypercube, forest: LinearForest | Iterable[Iterable[Vertex]]) -> LinearForest:
    if isinstance(forest, LinearForest):
        return forest
    return LinearForest.from_edges([h.check_edge(*e) for e in forest])


def ham_path(
    h: BalancedHypercube,
    faults: Iterable[Iterable[Vertex]],
    forest: LinearForest | Iterable[Iterable[Vertex]],
    u: Vertex,
    v: Vertex,
    node_budget: int | None = None,
) -> HamPath | None:
    """A hamiltonian u-v path of BH_n - F through every prescribed edge, or None."""
    fs = _edge_set(h, faults)
    lf = _forest(h, forest)
    iu, iv = _ids(h, (u, v))
    if iu == iv:
        return None
    if h.order == 1:
        return None
    if fs & lf.edges:
        return None
    if not compatible(lf, u, v) or is_even(u) == is_even(v):
        return None
    found = _pair_search(h, fs, lf.edges, iu, iv, node_budget=node_budget)
    return None if found is None else _names(h, found)


def ham_cycle_through(
    h: BalancedHypercube,
    faults: Iterable[Iterable[Vertex]],
    forest: LinearForest | Iterable[Iterable[Vertex]],
    node_budget: int | None = None,
) -> HamPath | None:
    """A hamiltonian cycle of BH_n - F containing the forest, listed without repeating its start."""
    fs = _edge_set(h, faults)
    lf = _forest(h, forest)
    if fs & lf.edges:
        return None
    if lf.edges:
        x, y = min(lf.edges)
        rest = lf.minus((x, y))
        found = _pair_search(h, fs | {(x, y)}, rest.edges, h.index(x), h.index(y), node_budget=node_budget)
        return None if found is None else _names(h, found)
    names = h.names
    root = names[0]
    for w in h.adjacency[0]:
        e = make_edge(root, names[w])
        if e in fs:
            continue
        found = _pair_search(h, fs | {e}, (), 0, w, node_budget=node_budget)
        if found is not None:
            return _names(h, found)
    return None


def path_cover(
    h: BalancedHypercube,
    faults: Iterable[Iterable[Vertex]],
    forest: LinearForest | Iterable[Iterable[Vertex]],
    pairs: Sequence[tuple[Vertex, Vertex]],
    removed: Iterable[Vertex] = (),
    node_budget: int | None = None,
) -> list[HamPath] | None:
    """Vertex-disjoint paths joining each terminal pair that together cover BH_n - removed."""
    fs = _edge_set(h, faults)
    lf = _forest(h, forest)
    ip = [tuple(_ids(h, p)) for p in pairs]
    ir = _ids(h, removed)
    if len(ip) == 1:
        one = _pair_search(h, fs, lf.edges, *ip[0], removed=ir, node_budget=node_budget)
        return None if one is None else [_names(h, one)]
    found = _Search(h, fs, lf.edges, ip, removed=ir, node_budget=node_budget).run()
    return None if found is None else [_names(h, p) for p in found]


def two_path_cover(
    h: BalancedHypercube,
    u: Vertex,
    v: Vertex,
    x: Vertex,
    y: Vertex,
    node_budget: int | None = None,
) -> tuple[HamPath, HamPath] | None:
    """Two vertex-disjoint paths P[u,v] and P[x,y] covering every vertex of BH_n.

    Requires u, x even and v, y odd, all four distinct.
    """
    for w in (u, v, x, y):
        h.check_vertex(w)
    if not (is_even(u) and is_even(x)) or is_even(v) or is_even(y):
        raise PreconditionError("two_path_cover needs u, x even and v, y odd")
    if len({u, v, x, y}) != 4:
        raise PreconditionError("two_path_cover needs four distinct vertices")
    found = path_cover(h, (), EMPTY_FOREST, [(u, v), (x, y)], node_budget=node_budget)
    return None if found is None else (found[0], found[1])


def ham_path_minus_vertex(
    h: BalancedHypercube,
    w: Vertex,
    x: Vertex,
    y: Vertex,
    node_budget: int | None = None,
) -> HamPath | None:
    """A hamiltonian x-y path of BH_n - w, where x and y lie in the part not containing w."""
    for z in (w, x, y):
        h.check_vertex(z)
    if x == y:
        raise PreconditionError("ham_path_minus_vertex needs distinct x and y")
    if is_even(x) != is_even(y) or is_even(x) == is_even(w):
        raise PreconditionError("x and y must share a part and w must lie in the other")
    found = path_cover(h, (), EMPTY_FOREST, [(x, y)], removed=[w], node_budget=node_budget)
    return None if found is None else found[0]


# -- certification -----------------------------------------------------------


@dataclass
class CertReport:
    n: int
    k: int
    instances_checked: int = 0
    failures: list[Instance] = field(default_factory=list)
    inconclusive: list[Instance] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.inconclusive

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "instances_checked": self.instances_checked,
            "failures": [i.to_json() for i in self.failures],
            "inconclusive": [i.to_json() for i in self.inconclusive],
        }


def linear_forests(edges: Sequence[Edge], size: int) -> Iterable[LinearForest]:
    """Every linear forest with exactly ``size`` edges drawn from ``edges``."""
    for combo in itertools.combinations(edges, size):
        forest = LinearForest(frozenset(combo))
        if forest._violation() is None:
            yield forest


def certify(
    n: int,
    k: int,
    node_budget: int | None = None,
    sample: int | None = None,
    seed: int = 0,
) -> CertReport:
    """Check (k-|F|)-prescribed hamiltonian laceability of BH_n - F for every |F| <= k.

    Every fault set, every linear forest of BH_n - F with |F|+|E(L)| <= k and every
    compatible even/odd endpoint pair is tried.  ``sample`` restricts the run to a
    seeded random subset of the (F, L) combinations, for n = 3.
    """
    import random

    h = BalancedHypercube(n)
    report = CertReport(n, k)
    edges = sorted(h.edges())
    evens = [x for x in h.names if is_even(x)]
    odds = [x for x in h.names if not is_even(x)]
    combos: Iterable[tuple[tuple[Edge, ...], LinearForest]] = (
        (fs, lf)
        for nf in range(k + 1)
        for fs in itertools.combinations(edges, nf)
        for nl in range(k - nf + 1)
        for lf in linear_forests([e for e in edges if e not in set(fs)], nl)
    )
    if sample is not None:
        rng = random.Random(seed)
        pool = list(combos)
        combos = rng.sample(pool, min(sample, len(pool)))
    for fs, lf in combos:
        fset = frozenset(fs)
        for u in evens:
            if u in lf.internal_vertices:
                continue
            for v in odds:
                if not compatible(lf, u, v):
                    continue
                report.instances_checked += 1
                inst = Instance(n, fset, lf, u, v, k)
                try:
                    found = _pair_search(h, fset, lf.edges, h.index(u), h.index(v), node_budget=node_budget)
                except SearchBudgetExceeded:
                    report.inconclusive.append(inst)
                    continue
                if found is None:
                    report.failures.append(inst)
    return report


def solve_instance(instance: Instance, node_budget: int | None = None) -> HamPath | None:
    return ham_path(
        instance.h, instance.faults, instance.forest, instance.u, instance.v, node_budget
    )


__all__ = [
    "CertReport",
    "DEFAULT_NODE_BUDGET",
    "HamPath",
    "InstanceError",
    "PreconditionError",
    "SearchBudgetExceeded",
    "certify",
    "ham_cycle_through",
    "ham_path",
    "ham_path_minus_vertex",
    "linear_forests",
    "path_cover",
    "solve_instance",
    "two_path_cover",
]
