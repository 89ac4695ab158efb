"""Candidate-selection lemmas used while splicing block paths.

Each ``pick_*`` scans candidates in lexicographic order and returns the first one
satisfying the lemma's conditions, raising :class:`NoCandidate` otherwise.  The
matching ``iter_*`` generators yield every qualifying candidate, which the splice
engine uses to back off when a later step rejects an earlier choice.

Crossing directions follow the partition: an even vertex of block ``i`` has both
crossing neighbours in block ``i+1`` and an odd vertex has both in ``i-1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence

from ..constraints import BlockData, LinearForest, compatible
from ..topology import Edge, PartitionView, Vertex, is_even, make_edge
from .errors import NoCandidate


@dataclass(frozen=True)
class LemmaContext:
    """Block-restricted constraint sets after normalization (block 0 has the max load)."""

    view: PartitionView
    forests: tuple[LinearForest, ...]
    faults: tuple[frozenset[Edge], ...]
    u: Vertex
    v: Vertex
    crossing_prescribed: frozenset[Edge] = frozenset()
    crossing_faults: frozenset[Edge] = frozenset()

    @classmethod
    def from_blocks(cls, blocks: BlockData, u: Vertex, v: Vertex) -> "LemmaContext":
        return cls(
            blocks.view,
            tuple(blocks.forests),
            tuple(blocks.faults),
            u,
            v,
            blocks.crossing_prescribed,
            blocks.crossing_faults,
        )

    @property
    def n(self) -> int:
        return self.view.h.n

    def load(self, k: int) -> int:
        return len(self.forests[k % 4]) + len(self.faults[k % 4])

    def forest(self, k: int) -> LinearForest:
        return self.forests[k % 4]

    @cached_property
    def _touched(self) -> tuple[frozenset[Vertex], ...]:
        return tuple(self.forests[k].vertices for k in range(4))

    @cached_property
    def _touched_f(self) -> tuple[frozenset[Vertex], ...]:
        out = []
        for k in range(4):
            vs = set(self.forests[k].vertices)
            for e in self.faults[k]:
                vs.update(e)
            out.append(frozenset(vs))
        return tuple(out)

    def touches(self, w: Vertex, k: int, with_faults: bool = False) -> bool:
        """Whether ``w`` is incident with E(L_k) (and F_k when ``with_faults``)."""
        table = self._touched_f if with_faults else self._touched
        return w in table[k % 4]

    def internal(self, w: Vertex, k: int) -> bool:
        return w in self.forests[k % 4].internal_vertices

    def block(self, w: Vertex) -> int:
        return self.view.block_of(w)

    def target(self, w: Vertex) -> int:
        """The block holding both crossing neighbours of ``w``."""
        return (self.block(w) + (1 if is_even(w) else -1)) % 4

    def cross(self, w: Vertex) -> tuple[Vertex, Vertex]:
        return self.view.cross(w)

    def crossing_edge(self) -> Edge | None:
        both = self.crossing_prescribed | self.crossing_faults
        return next(iter(both)) if len(both) == 1 else None

    def block_vertices(self, k: int, even: bool) -> list[Vertex]:
        return [w for w in self.view.blocks[k % 4] if is_even(w) == even]

    def adjacent_in_block(self, a: Vertex, b: Vertex) -> bool:
        return self.block(a) == self.block(b) and self.view.h.is_edge(a, b)

    def some_side_clear(self, w: Vertex, with_faults: bool = False) -> bool:
        k = self.target(w)
        return any(not self.touches(c, k, with_faults) for c in self.cross(w))

    def both_sides_clear(self, w: Vertex, with_faults: bool = True) -> bool:
        k = self.target(w)
        return all(not self.touches(c, k, with_faults) for c in self.cross(w))

    def clear_side(self, w: Vertex, with_faults: bool = False, avoid: Iterable[Vertex] = ()) -> Vertex | None:
        """"Say w^+": the + neighbour when it qualifies, else the - one."""
        k = self.target(w)
        bad = set(avoid)
        for c in self.cross(w):
            if c in bad or make_edge(w, c) in self.crossing_faults:
                continue
            if not self.touches(c, k, with_faults):
                return c
        return None

    def summary(self) -> dict:
        return {
            "n": self.n,
            "j": self.view.j,
            "loads": [self.load(k) for k in range(4)],
            "forests": [f.to_json() for f in self.forests],
            "faults": [sorted(list(e) for e in fs) for fs in self.faults],
            "crossing_prescribed": sorted(self.crossing_prescribed),
            "crossing_faults": sorted(self.crossing_faults),
            "u": self.u,
            "v": self.v,
        }


def _first(it: Iterator, what: str, ctx: LemmaContext, **detail):
    for c in it:
        return c
    raise NoCandidate(f"{what}: no candidate", {**ctx.summary(), **detail})


# -- Lemma le-2 ---------------------------------------------------------------


def iter_vertex_clear(
    ctx: LemmaContext, i: int, even: bool, s: Vertex | None = None, avoid: Iterable[Vertex] = ()
) -> Iterator[Vertex]:
    bad = set(avoid)
    for x in ctx.block_vertices(i, even):
        if x == s or x in bad or ctx.touches(x, i):
            continue
        k = ctx.target(x)
        if any(ctx.touches(c, k, with_faults=True) for c in ctx.cross(x)):
            continue
        yield x


def pick_vertex_clear(
    ctx: LemmaContext, i: int, even: bool, s: Vertex | None = None, avoid: Iterable[Vertex] = ()
) -> Vertex:
    """A vertex of block ``i`` clear of E(L_i) whose crossing neighbours avoid E(L)∪F next door."""
    return _first(iter_vertex_clear(ctx, i, even, s, avoid), "le-2", ctx, block=i, even=even, s=s)


# -- Lemma le-3 ---------------------------------------------------------------


def iter_edge_on_path(
    ctx: LemmaContext, i: int, path: Sequence[Vertex], y: Vertex | None = None, avoid: Iterable[Vertex] = ()
) -> Iterator[tuple[Vertex, Vertex]]:
    ends = {path[0], path[-1]}
    bad = set(avoid)
    strict = ctx.load(i) >= 2 * ctx.n - 3
    forest = ctx.forest(i)
    for a, b in zip(path, path[1:]):
        if make_edge(a, b) in forest.edges:
            continue
        s, t = (a, b) if is_even(a) else (b, a)
        if {s, t} & ends or y in (s, t) or {s, t} & bad:
            continue
        if strict:
            ok = ctx.both_sides_clear(s) and ctx.both_sides_clear(t)
        else:
            ok = ctx.some_side_clear(s, with_faults=True) and ctx.some_side_clear(t, with_faults=True)
        if ok:
            yield s, t


def pick_edge_on_path(
    ctx: LemmaContext, i: int, path: Sequence[Vertex], y: Vertex | None = None, avoid: Iterable[Vertex] = ()
) -> tuple[Vertex, Vertex]:
    """An edge (s,t) of the block path, s even, off E(L_i), away from the ends and from ``y``."""
    return _first(iter_edge_on_path(ctx, i, path, y, avoid), "le-3", ctx, block=i, y=y)


# -- Lemma le-4 ---------------------------------------------------------------


def iter_vertex_unlinked(ctx: LemmaContext, i: int, even: bool, avoid: Iterable[Vertex] = ()) -> Iterator[Vertex]:
    h = ctx.view.h
    far = ctx.u if even else ctx.v
    crossing = ctx.crossing_edge() if ctx.n >= 4 else None
    bad = set(avoid)
    for s in ctx.block_vertices(i, even):
        if s in bad or ctx.touches(s, i):
            continue
        k = ctx.target(s)
        sides = ctx.cross(s)
        if any(ctx.touches(c, k, with_faults=True) for c in sides):
            continue
        if any(ctx.adjacent_in_block(far, c) for c in sides):
            continue
        if crossing is not None:
            x, y = crossing if is_even(crossing[0]) else crossing[::-1]
            if s in (x, y):
                continue
            near = x if even else y
            if any(ctx.adjacent_in_block(near, c) for c in sides):
                continue
        yield s
    del h


def pick_vertex_unlinked(ctx: LemmaContext, i: int, even: bool, avoid: Iterable[Vertex] = ()) -> Vertex:
    """le-2's conditions plus: the far endpoint (and the crossing edge's end) is not adjacent to s±."""
    return _first(iter_vertex_unlinked(ctx, i, even, avoid), "le-4", ctx, block=i, even=even)


# -- Lemma le-9 ---------------------------------------------------------------


def _block_nbrs(ctx: LemmaContext, r: Vertex, exclude: Iterable[Vertex] = ()) -> list[Vertex]:
    bad = set(exclude)
    k = ctx.block(r)
    return [w for w in ctx.view.block_neighbors(r) if w not in bad and make_edge(r, w) not in ctx.faults[k]]


def iter_two_neighbors(ctx: LemmaContext, r: Vertex, with_faults: bool = False) -> Iterator[tuple[Vertex, Vertex]]:
    i = ctx.block(r)
    forest = ctx.forest(i)
    nbrs = _block_nbrs(ctx, r)
    for s in nbrs:
        if not forest.can_add((r, s)) or not ctx.some_side_clear(s, with_faults):
            continue
        grown = forest.plus((r, s))
        for t in nbrs:
            if t == s or not grown.can_add((r, t)) or not ctx.some_side_clear(t, with_faults):
                continue
            yield s, t


def pick_two_neighbors(ctx: LemmaContext, r: Vertex, with_faults: bool = False) -> tuple[Vertex, Vertex]:
    """Two block neighbours s, t of ``r`` with L_i+{(r,s),(r,t)} a linear forest and a clear side each."""
    return _first(iter_two_neighbors(ctx, r, with_faults), "le-9", ctx, r=r)


# -- Lemma le-8 ---------------------------------------------------------------


def iter_extension_neighbor(ctx: LemmaContext, r: Vertex, y: Vertex, z: Vertex) -> Iterator[Vertex]:
    j = ctx.block(r)
    forest = ctx.forest(j)
    strong = ctx.load(0) <= 2 * ctx.n - 6 and not ctx.touches(y if is_even(r) else z, j)
    for s in _block_nbrs(ctx, r):
        if make_edge(r, s) in forest.edges or not forest.can_add((r, s)):
            continue
        if not compatible(forest.plus((r, s)), y, z):
            continue
        k = ctx.target(s)
        if all(ctx.internal(c, k) for c in ctx.cross(s)):
            continue
        if strong and not ctx.some_side_clear(s):
            continue
        yield s


def pick_extension_neighbor(ctx: LemmaContext, r: Vertex, y: Vertex, z: Vertex) -> Vertex:
    """A block neighbour s of ``r`` such that L_j+(r,s) stays a forest compatible with {y,z}."""
    return _first(iter_extension_neighbor(ctx, r, y, z), "le-8", ctx, r=r, y=y, z=z)


# -- Lemma le-10 --------------------------------------------------------------


def iter_detour_pair(ctx: LemmaContext, x: Vertex, y: Vertex, z: Vertex) -> Iterator[tuple[Vertex, Vertex]]:
    l = ctx.block(x)
    base = ctx.forest(l).minus((x, y))
    h = ctx.view.h
    nbrs = _block_nbrs(ctx, x, exclude=[y])
    for s in nbrs:
        if not base.can_add((x, s)) or not ctx.some_side_clear(s, with_faults=True):
            continue
        one = base.plus((x, s))
        for t in nbrs:
            if t == s or t == h.shadow(s) or not one.can_add((x, t)):
                continue
            k = ctx.target(t)
            if all(ctx.internal(c, k) for c in ctx.cross(t)):
                continue
            if compatible(one.plus((x, t)), y, z):
                yield s, t


def pick_detour_pair(ctx: LemmaContext, x: Vertex, y: Vertex, z: Vertex) -> tuple[Vertex, Vertex]:
    """Swap the forest edge (x,y) for two edges (x,s), (x,t) with t not the shadow of s."""
    return _first(iter_detour_pair(ctx, x, y, z), "le-10", ctx, x=x, y=y, z=z)


# -- Lemmas le-11 and le-13 ---------------------------------------------------


def iter_crossing_neighbor(ctx: LemmaContext, r: Vertex, y: Vertex | None) -> Iterator[Vertex]:
    k = ctx.block(r)
    forest = ctx.forest(k)
    for z in _block_nbrs(ctx, r, exclude=[y] if y else []):
        if make_edge(r, z) in forest.edges or not forest.can_add((r, z)):
            continue
        if ctx.some_side_clear(z):
            yield z


def pick_crossing_neighbor(ctx: LemmaContext, r: Vertex, y: Vertex | None = None) -> Vertex:
    """le-11: z adjacent to an end ``r`` of the crossing edge, L+(r,z) a forest, one side of z clear."""
    return _first(iter_crossing_neighbor(ctx, r, y), "le-11", ctx, r=r, y=y)


def pick_crossing_neighbor_l0(ctx: LemmaContext, x: Vertex, y: Vertex | None = None) -> Vertex:
    """le-13: the l=0 variant, z in B^0 adjacent to x.  Clearance is checked in z's target block."""
    return _first(iter_crossing_neighbor(ctx, x, y), "le-13", ctx, x=x, y=y)


# -- Lemma le-12 --------------------------------------------------------------


def iter_branch_pair_l0(ctx: LemmaContext, x: Vertex, y: Vertex) -> Iterator[tuple[Vertex, Vertex]]:
    base = ctx.forest(ctx.block(x)).minus((x, y))
    nbrs = _block_nbrs(ctx, x, exclude=[y])
    for s in nbrs:
        if not base.can_add((x, s)) or not ctx.both_sides_clear(s, with_faults=False):
            continue
        one = base.plus((x, s))
        for t in nbrs:
            if t != s and one.can_add((x, t)):
                yield s, t


def pick_branch_pair_l0(ctx: LemmaContext, x: Vertex, y: Vertex) -> tuple[Vertex, Vertex]:
    """le-12: replace (x,y) by (x,s), (x,t) in L_0 with both sides of s clear of E(L_3)."""
    return _first(iter_branch_pair_l0(ctx, x, y), "le-12", ctx, x=x, y=y)


PICKS: dict[str, Callable] = {
    "le-2": pick_vertex_clear,
    "le-3": pick_edge_on_path,
    "le-4": pick_vertex_unlinked,
    "le-8": pick_extension_neighbor,
    "le-9": pick_two_neighbors,
    "le-10": pick_detour_pair,
    "le-11": pick_crossing_neighbor,
    "le-12": pick_branch_pair_l0,
    "le-13": pick_crossing_neighbor_l0,
}
