"""Route planning and block splicing.

A route is the sequence of blocks a hamiltonian path of BH_n visits after the
partition along dimension j, e.g. ``0-1-2-3-0`` for a path that starts in B^0,
sweeps the other three blocks and comes back.  Consecutive blocks differ by one
mod 4 and each block is visited once or twice.  The t-th visit is a *segment*
with an ``in`` and an ``out`` end, and consecutive segments are joined by a
j-dimensional edge (a *junction*).

Parity is forced by the partition: an up-step leaves an even vertex and lands on
an odd one, a down-step the reverse.  A block visited once needs ends of opposite
parity; a block visited twice needs its two segments to balance out.

Each block is covered by one of:

* ``path``: one segment, a recursive H-path between its ends;
* ``path-cut``: two segments from one H-path between one end of each, cut at a
  non-prescribed edge (both remaining ends are derived from the cut);
* ``cycle-cut``: two segments from an H-cycle through L_k (built as in the
  H-cycle lemma: a recursive H-path between the ends of a prescribed edge), cut
  at two edges.  This is what absorbs block loads of 2n-3 and 2n-2: faults that
  would overflow the recursive budget are withheld, and a withheld fault that
  lands on the cycle must be one of the cuts;
* ``cover``: two segments in a block without constraints, via the two-disjoint-
  path / vertex-deleted path subroutines.

Prescribed crossing edges are pinned to a junction of the route and crossing
faults are never used as junctions.  Blocks are processed most-constrained first;
every derived end hands its two crossing neighbours to the next block as options.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from ..constraints import Instance, LinearForest, compatible
from ..solvers import SearchBudgetExceeded, path_cover
from ..topology import Edge, Vertex, is_even, make_edge
from .errors import ConstructionError
from .lemmas import LemmaContext, iter_vertex_clear

Slot = tuple[int, str]
IN, OUT = "in", "out"
SubSolver = Callable[[Instance], "list[Vertex] | None"]


# -- routes -------------------------------------------------------------------


@dataclass(frozen=True)
class Route:
    blocks: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.blocks) - 1

    def up(self, t: int) -> bool:
        return (self.blocks[t + 1] - self.blocks[t]) % 4 == 1

    def even(self, slot: Slot) -> bool:
        t, side = slot
        if side == IN:
            return True if t == 0 else not self.up(t - 1)
        return False if t == self.m else self.up(t)

    def segments(self, k: int) -> list[int]:
        return [t for t, b in enumerate(self.blocks) if b == k]

    def single_ok(self, t: int) -> bool:
        return self.even((t, IN)) == self.even((t, OUT))

    def partner(self, slot: Slot) -> Slot | None:
        t, side = slot
        if side == OUT:
            return (t + 1, IN) if t < self.m else None
        return (t - 1, OUT) if t > 0 else None

    def block_of(self, slot: Slot) -> int:
        return self.blocks[slot[0]]

    def balanced(self) -> bool:
        for k in range(4):
            total = 0
            for t in self.segments(k):
                a, b = self.even((t, IN)), self.even((t, OUT))
                total += 1 if a and b else -1 if not (a or b) else 0
            if total:
                return False
        return True

    def __str__(self) -> str:
        return "-".join(map(str, self.blocks))


def enumerate_routes(bu: int, bv: int, max_len: int = 8) -> list[Route]:
    """Every balanced route from block ``bu`` to block ``bv``, shortest first."""
    found: list[Route] = []
    seq = [bu]
    counts = [0, 0, 0, 0]
    counts[bu] = 1

    def rec() -> None:
        if seq[-1] == bv and min(counts) >= 1:
            r = Route(tuple(seq))
            if r.balanced():
                found.append(r)
        if len(seq) == max_len:
            return
        for d in (1, -1):
            nb = (seq[-1] + d) % 4
            if counts[nb] < 2:
                counts[nb] += 1
                seq.append(nb)
                rec()
                seq.pop()
                counts[nb] -= 1

    rec()
    found.sort(key=lambda r: (len(r.blocks), r.blocks))
    return found


def pin_choices(route: Route, ctx: LemmaContext) -> list[dict[Slot, Vertex]]:
    """Ways to place every prescribed crossing edge on a junction of the route."""
    per_edge = []
    for e in sorted(ctx.crossing_prescribed):
        x, y = e if is_even(e[0]) else (e[1], e[0])
        bx, by = ctx.block(x), ctx.block(y)
        opts = []
        for t in range(route.m):
            if route.blocks[t] == bx and route.blocks[t + 1] == by:
                opts.append((t, x, y))
            elif route.blocks[t] == by and route.blocks[t + 1] == bx:
                opts.append((t, y, x))
        per_edge.append(opts)
    out = []
    for combo in itertools.product(*per_edge):
        if len({t for t, _, _ in combo}) < len(combo):
            continue
        pins: dict[Slot, Vertex] = {}
        for t, a, b in combo:
            pins[(t, OUT)] = a
            pins[(t + 1, IN)] = b
        out.append(pins)
    return out


# -- block sub-solves ---------------------------------------------------------


@dataclass
class EngineStats:
    subcalls: int = 0
    plans: int = 0
    covers: int = 0


class BlockSolver:
    """Recursive H-paths and H-cycles inside one block, in full BH_n coordinates."""

    def __init__(self, ctx: LemmaContext, sub: SubSolver, stats: EngineStats, limit: int):
        self.ctx = ctx
        self.view = ctx.view
        self.sub = sub
        self.stats = stats
        self.limit = limit
        self.m = ctx.n - 1

    def exhausted(self) -> bool:
        return self.stats.subcalls >= self.limit

    def path(
        self, k: int, faults: frozenset[Edge], forest: LinearForest, a: Vertex, b: Vertex
    ) -> list[Vertex] | None:
        if a == b or is_even(a) == is_even(b) or not compatible(forest, a, b):
            return None
        if faults & forest.edges:
            return None
        budget = 2 * self.m - 2
        if len(faults) + len(forest) > budget:
            raise ConstructionError(
                f"recursive call in block {k} would exceed the sub-budget: "
                f"|F_k|+|E(L_k)| = {len(faults) + len(forest)} > {budget}"
            )
        if self.exhausted():
            return None
        self.stats.subcalls += 1
        p = self.view.project
        if not is_even(a):
            a, b, flip = b, a, True
        else:
            flip = False
        inst = Instance(
            self.m,
            frozenset(make_edge(p(x), p(y)) for x, y in faults),
            LinearForest(frozenset(make_edge(p(x), p(y)) for x, y in forest.edges)),
            p(a),
            p(b),
            budget,
        )
        found = self.sub(inst)
        if found is None:
            return None
        lifted = [self.view.lift(w, k) for w in found]
        if lifted[0] != a:
            lifted.reverse()
        return lifted[::-1] if flip else lifted

    def cycle(
        self, k: int, faults: frozenset[Edge], forest: LinearForest, open_edge: Edge | None = None
    ) -> list[Vertex] | None:
        """An H-cycle of block k through ``forest`` avoiding ``faults``.

        Opens the cycle at a prescribed edge (x,y) and asks for an H-path x→y through
        the rest; with an empty forest ``open_edge`` plays that role.
        """
        if forest.edges:
            x, y = open_edge if open_edge in forest.edges else min(forest.edges)
            return self.path(k, faults, forest.minus((x, y)), x, y)
        if open_edge is None or open_edge in faults:
            return None
        return self.path(k, faults, forest, *open_edge)


# -- the planner --------------------------------------------------------------


@dataclass
class Plan:
    route: Route
    segments: dict[int, list[Vertex]]
    modes: dict[int, str]

    def assemble(self) -> list[Vertex]:
        out: list[Vertex] = []
        for t in range(self.route.m + 1):
            out.extend(self.segments[t])
        return out


@dataclass
class _State:
    assign: dict[Slot, Vertex]
    opts: dict[Slot, tuple[Vertex, ...]]
    segments: dict[int, list[Vertex]] = field(default_factory=dict)
    modes: dict[int, str] = field(default_factory=dict)
    done: frozenset[int] = frozenset()


@dataclass(frozen=True)
class Limits:
    free_candidates: int = 6
    path_pairs: int = 8
    covers_per_block: int = 3
    cuts_per_structure: int = 3
    open_edges: int = 2
    withhold_sets: int = 4
    subcalls: int = 400
    rounds: int = 3
    node_budget: int = 200_000


class SpliceEngine:
    def __init__(
        self,
        ctx: LemmaContext,
        sub: SubSolver,
        rng: random.Random,
        limits: Limits = Limits(),
        stats: EngineStats | None = None,
    ):
        self.ctx = ctx
        self.rng = rng
        self.limits = limits
        self.stats = stats or EngineStats()
        self.solver = BlockSolver(ctx, sub, self.stats, limits.subcalls)
        self.S = 2 * ctx.n - 4
        self.view = ctx.view

    # route-level ------------------------------------------------------------

    def routes(self) -> Iterator[tuple[Route, dict[Slot, Vertex]]]:
        ctx = self.ctx
        routes = enumerate_routes(ctx.block(ctx.u), ctx.block(ctx.v))
        heavy = ctx.load(0) > self.S
        # A block over the recursive budget can only be absorbed by a split cover.
        routes.sort(key=lambda r: (heavy and len(r.segments(0)) < 2, len(r.blocks), r.blocks))
        for r in routes:
            for pins in pin_choices(r, ctx):
                fixed = self._fixed(r, pins)
                if fixed is not None:
                    yield r, fixed

    def _fixed(self, route: Route, pins: dict[Slot, Vertex]) -> dict[Slot, Vertex] | None:
        fixed: dict[Slot, Vertex] = {(0, IN): self.ctx.u, (route.m, OUT): self.ctx.v}
        for s, w in pins.items():
            if fixed.get(s, w) != w:
                return None
            fixed[s] = w
        where: dict[Vertex, list[Slot]] = {}
        for s, w in fixed.items():
            if self.ctx.block(w) != route.block_of(s) or route.even(s) != is_even(w):
                return None
            where.setdefault(w, []).append(s)
        for w, slots in where.items():
            if len(slots) > 1:
                ts = {t for t, _ in slots}
                if len(slots) != 2 or len(ts) != 1 or not route.single_ok(ts.pop()):
                    return None
        for s, w in fixed.items():
            p = route.partner(s)
            if p is not None and p in fixed and not self._junction_ok(w, fixed[p]):
                return None
        return fixed

    def _junction_ok(self, a: Vertex, b: Vertex) -> bool:
        return b in self.view.cross(a) and make_edge(a, b) not in self.ctx.crossing_faults

    def plan(self, route: Route, fixed: dict[Slot, Vertex]) -> Plan | None:
        self.stats.plans += 1
        st = _State(dict(fixed), {})
        for s, w in fixed.items():
            p = route.partner(s)
            if p is not None and p not in fixed:
                opts = self._partners(route, st, s, w)
                if not opts:
                    return None
                st.opts[p] = opts
        found = self._dfs(route, st)
        if found is None:
            return None
        return Plan(route, found.segments, found.modes)

    def _dfs(self, route: Route, st: _State) -> _State | None:
        todo = [k for k in range(4) if k not in st.done]
        if not todo:
            return st
        k = min(todo, key=lambda b: self._priority(route, st, b))
        for assign, segs, mode in itertools.islice(self._covers(route, st, k), self.limits.covers_per_block):
            nxt = _State({**st.assign, **assign}, dict(st.opts), {**st.segments, **segs},
                         {**st.modes, k: mode}, st.done | {k})
            if not self._propagate(route, nxt, assign):
                continue
            res = self._dfs(route, nxt)
            if res is not None:
                return res
            if self.solver.exhausted():
                return None
        return None

    def _priority(self, route: Route, st: _State, k: int) -> tuple:
        segs = route.segments(k)
        known = sum(1 for t in segs for side in (IN, OUT) if (t, side) in st.assign or (t, side) in st.opts)
        return (len(segs) == 1, -self.ctx.load(k), -known, k)

    def _propagate(self, route: Route, st: _State, assign: dict[Slot, Vertex]) -> bool:
        for s, w in assign.items():
            p = route.partner(s)
            if p is None:
                continue
            if p in st.assign:
                if not self._junction_ok(w, st.assign[p]):
                    return False
                continue
            opts = self._partners(route, st, s, w)
            if not opts:
                return False
            st.opts[p] = opts
        return True

    def _partners(self, route: Route, st: _State, s: Slot, w: Vertex) -> tuple[Vertex, ...]:
        p = route.partner(s)
        assert p is not None
        kp = route.block_of(p)
        taken = {x for q, x in st.assign.items() if route.block_of(q) == kp and q != p}
        out = []
        for c in self.view.cross(w):
            if make_edge(w, c) in self.ctx.crossing_faults or c in taken:
                continue
            if self.ctx.internal(c, kp):
                continue
            if p in st.opts and c not in st.opts[p]:
                continue
            out.append(c)
        return tuple(out)

    # slot predicates ----------------------------------------------------------

    def _slot_ok(self, route: Route, st: _State, k: int, s: Slot, w: Vertex) -> bool:
        if s in st.assign:
            return st.assign[s] == w
        if s in st.opts:
            return w in st.opts[s]
        if is_even(w) != route.even(s) or self.ctx.internal(w, k):
            return False
        if any(x == w for q, x in st.assign.items() if route.block_of(q) == k):
            return False
        p = route.partner(s)
        if p is None:
            return False
        if p in st.assign:
            return self._junction_ok(w, st.assign[p])
        return bool(self._partners(route, st, s, w))

    def _candidates(self, route: Route, st: _State, k: int, s: Slot) -> list[Vertex]:
        if s in st.assign:
            return [st.assign[s]]
        if s in st.opts:
            return list(st.opts[s])
        even = route.even(s)
        clear = list(iter_vertex_clear(self.ctx, k, even))
        clear_set = set(clear)
        rest = [w for w in self.ctx.block_vertices(k, even) if w not in clear_set]
        self.rng.shuffle(clear)
        self.rng.shuffle(rest)
        out = []
        for w in itertools.chain(clear, rest):
            if self._slot_ok(route, st, k, s, w):
                out.append(w)
                if len(out) >= self.limits.free_candidates:
                    break
        return out

    def _constrained(self, st: _State, s: Slot) -> int:
        return 2 if s in st.assign else 1 if s in st.opts else 0

    # covers -------------------------------------------------------------------

    def _covers(self, route: Route, st: _State, k: int) -> Iterator[tuple[dict, dict, str]]:
        segs = route.segments(k)
        if len(segs) == 1:
            if self.ctx.load(k) > self.S:
                yield from self._cover_cycle_single(route, st, k, segs[0])
            yield from self._cover_single(route, st, k, segs[0])
            return
        slots = [(t, side) for t in segs for side in (IN, OUT)]
        constrained = sum(1 for s in slots if self._constrained(st, s))
        clean = self.ctx.load(k) == 0
        strategies = [self._cover_path_cut, self._cover_cycle_cut]
        if self.ctx.load(k) > self.S:
            strategies.reverse()
        if clean:
            strategies.insert(0 if constrained >= 3 else 2, self._cover_clean)
        for strat in strategies:
            for item in strat(route, st, k, segs):
                self.stats.covers += 1
                yield item
            if self.solver.exhausted():
                return

    def _withheld(self, k: int, need: int) -> list[tuple[Edge, ...]]:
        if need <= 0:
            return [()]
        faults = sorted(self.ctx.faults[k])
        if need > len(faults):
            return []
        combos = list(itertools.combinations(faults, need))
        self.rng.shuffle(combos)
        return combos[: self.limits.withhold_sets]

    def _cover_single(self, route: Route, st: _State, k: int, t: int) -> Iterator[tuple[dict, dict, str]]:
        forest, faults = self.ctx.forest(k), self.ctx.faults[k]
        A = self._candidates(route, st, k, (t, IN))
        B = self._candidates(route, st, k, (t, OUT))
        tries = 0
        for a, b in itertools.product(A, B):
            if a == b or not compatible(forest, a, b):
                continue
            for held in self._withheld(k, self.ctx.load(k) - self.S):
                path = self.solver.path(k, faults - set(held), forest, a, b)
                tries += 1
                if path is not None and not self._uses(path, held):
                    mode = "path" + (f"[withheld {len(held)}]" if held else "")
                    yield {(t, IN): a, (t, OUT): b}, {t: path}, mode
                    break
            if tries >= self.limits.path_pairs or self.solver.exhausted():
                return

    @staticmethod
    def _uses(path: Sequence[Vertex], edges: Sequence[Edge]) -> bool:
        if not edges:
            return False
        steps = {make_edge(a, b) for a, b in zip(path, path[1:])}
        return any(e in steps for e in edges)

    def _match(
        self, route: Route, st: _State, k: int, segs: Sequence[int], pieces: Sequence[list[Vertex]]
    ) -> tuple[dict, dict] | None:
        """Assign two vertex-disjoint pieces to the block's two segments, either orientation."""
        for order in ((0, 1), (1, 0)):
            assign: dict[Slot, Vertex] = {}
            segments: dict[int, list[Vertex]] = {}
            for t, i in zip(segs, order):
                piece = pieces[i]
                for cand in (piece, piece[::-1]):
                    if len(cand) == 1 and not route.single_ok(t):
                        continue
                    if self._slot_ok(route, st, k, (t, IN), cand[0]) and self._slot_ok(
                        route, st, k, (t, OUT), cand[-1]
                    ):
                        assign[(t, IN)], assign[(t, OUT)] = cand[0], cand[-1]
                        segments[t] = list(cand)
                        break
                else:
                    break
            else:
                if self._joint_ok(route, st, assign):
                    return assign, segments
        return None

    def _joint_ok(self, route: Route, st: _State, assign: dict[Slot, Vertex]) -> bool:
        """Two derived ends of one block must not compete for the same lone partner."""
        claims: dict[Vertex, int] = {}
        for s, w in assign.items():
            p = route.partner(s)
            if p is None or p in st.assign:
                continue
            opts = self._partners(route, st, s, w)
            if len(opts) == 1:
                claims[opts[0]] = claims.get(opts[0], 0) + 1
        return all(c <= 1 for c in claims.values())

    def _score(self, assign: dict[Slot, Vertex], st: _State) -> int:
        return sum(1 for s, w in assign.items() if s not in st.assign and self.ctx.some_side_clear(w, True))

    def _anchor_pairs(self, route: Route, st: _State, k: int, segs: Sequence[int]) -> list[tuple[Slot, Slot]]:
        def ranked(t: int) -> list[Slot]:
            return sorted(((t, IN), (t, OUT)), key=lambda s: -self._constrained(st, s))

        a, b = ranked(segs[0]), ranked(segs[1])
        pairs = [(a[0], b[0]), (a[0], b[1]), (a[1], b[0]), (a[1], b[1])]
        return pairs

    def _path_variants(self, k: int) -> list[tuple[tuple, Edge | None]]:
        """(withheld faults, set-aside prescribed edge) choices that fit one recursive call."""
        forest, faults = self.ctx.forest(k), self.ctx.faults[k]
        over = self.ctx.load(k) - self.S
        out: list[tuple[tuple, Edge | None]] = [(held, None) for held in self._withheld(k, over)]
        if forest.edges and over > min(len(faults), 1):
            chords = sorted(forest.edges)
            self.rng.shuffle(chords)
            for chord in chords[: self.limits.open_edges]:
                out += [(held, chord) for held in self._withheld(k, over - 1)]
        return out

    def _cover_path_cut(self, route: Route, st: _State, k: int, segs: Sequence[int]) -> Iterator:
        forest, faults = self.ctx.forest(k), self.ctx.faults[k]
        variants = self._path_variants(k)
        tries = 0
        seen: set[tuple[Vertex, Vertex]] = set()
        for sa, sb in self._anchor_pairs(route, st, k, segs):
            for p, q in itertools.product(
                self._candidates(route, st, k, sa), self._candidates(route, st, k, sb)
            ):
                if p == q or is_even(p) == is_even(q) or (p, q) in seen:
                    continue
                seen.add((p, q))
                for held, chord in variants:
                    lf = forest.minus(chord) if chord else forest
                    if not compatible(lf, p, q):
                        continue
                    tries += 1
                    path = self.solver.path(k, faults - set(held), lf, p, q)
                    if path is None:
                        continue
                    yielded = 0
                    for item in self._cuts_of_base(route, st, k, segs, path, held, chord):
                        yield item
                        yielded += 1
                        if yielded >= self.limits.cuts_per_structure:
                            break
                    break
                if tries >= self.limits.path_pairs or self.solver.exhausted():
                    return

    def _cuts_of_base(self, route, st, k, segs, path, held, chord) -> Iterator:
        steps = {make_edge(a, b) for a, b in zip(path, path[1:])}
        if chord is None or chord in steps:
            yield from self._cuts_of_path(route, st, k, segs, path, held)
            return
        found = []
        for comps in self._resolve(k, steps | {chord}):
            used = {make_edge(a, b) for c in comps for a, b in zip(c, c[1:])}
            if used & set(held):
                continue
            if len(comps) == 1:
                yield from self._cuts_of_path(route, st, k, segs, comps[0], held)
            else:
                m = self._match(route, st, k, segs, comps)
                if m is not None:
                    found.append(m)
        yield from self._best(found, st, "path-cut[chord]", held)

    def _resolve(self, k: int, edges: set[Edge]) -> Iterator[list[list[Vertex]]]:
        """Drop one non-prescribed edge at each degree-3 vertex; keep the acyclic outcomes."""
        forest = self.ctx.forest(k)
        adj: dict[Vertex, set[Vertex]] = {}
        for a, b in edges:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        heavy = sorted(w for w, ns in adj.items() if len(ns) > 2)
        options = [[make_edge(w, x) for x in sorted(adj[w]) if make_edge(w, x) not in forest.edges] for w in heavy]
        for drop in itertools.product(*options):
            kept = edges - set(drop)
            comps = _components(kept, adj.keys())
            if comps is not None:
                yield comps

    def _cuts_of_path(self, route, st, k, segs, path, held) -> Iterator:
        forest = self.ctx.forest(k)
        held_pos = [i for i in range(len(path) - 1) if make_edge(path[i], path[i + 1]) in held]
        if len(held_pos) > 1:
            return
        positions = held_pos or list(range(len(path) - 1))
        found = []
        for r in positions:
            if make_edge(path[r], path[r + 1]) in forest.edges:
                continue
            m = self._match(route, st, k, segs, [path[: r + 1], path[r + 1 :]])
            if m is not None:
                found.append(m)
        yield from self._best(found, st, "path-cut", held)

    def _best(self, found: list, st: _State, mode: str, held: Sequence[Edge]) -> Iterator:
        self.rng.shuffle(found)
        found.sort(key=lambda m: -self._score(m[0], st))
        tag = mode + (f"[withheld {len(held)}]" if held else "")
        for assign, segments in found[: self.limits.cuts_per_structure]:
            yield assign, segments, tag

    def _cycles(self, route: Route, st: _State, k: int) -> Iterator[tuple[list[Vertex], tuple, Edge | None]]:
        """H-cycles of block k as in the H-cycle lemma, with what had to be set aside.

        Faults are withheld while the load exceeds what one recursive call can take;
        a withheld fault may land on the cycle and must then be cut.  When the block
        has too few faults to withhold, one prescribed edge is set aside as a chord
        and spliced back in afterwards.
        """
        forest, faults = self.ctx.forest(k), self.ctx.faults[k]
        load = self.ctx.load(k)
        chords: list[Edge | None] = [None]
        if forest.edges and load - (self.S + 1) > min(len(faults), 2):
            chords += sorted(forest.edges)[: self.limits.open_edges]
        for chord in chords:
            lf = forest.minus(chord) if chord else forest
            over = load - (1 if chord else 0) - (self.S + 1 if lf.edges else self.S)
            for held in self._withheld(k, over):
                if len(held) > 2:
                    continue
                rest = faults - set(held)
                if lf.edges:
                    opens = sorted(lf.edges)
                else:
                    fixed = [w for s, w in st.assign.items() if route.block_of(s) == k]
                    base = fixed or list(self.view.blocks[k][:4])
                    opens = sorted({make_edge(w, x) for w in base for x in self.view.block_neighbors(w)} - faults)
                self.rng.shuffle(opens)
                for e in opens[: self.limits.open_edges]:
                    cyc = self.solver.cycle(k, rest, lf, e)
                    if cyc is not None:
                        yield cyc, held, chord
                        break
                if self.solver.exhausted():
                    return

    @staticmethod
    def _chord_paths(cyc: list[Vertex], chord: Edge) -> list[list[Vertex]]:
        """The two H-paths of an H-cycle plus a chord (x,y) that keep the chord."""
        x, y = chord
        i = cyc.index(x)
        c = cyc[i:] + cyc[:i]
        j = c.index(y)
        return [c[1 : j + 1] + [c[0]] + c[j + 1 :][::-1], c[:j][::-1] + c[j:]]

    def _cycle_paths(self, k: int, cyc: list[Vertex], held: tuple, chord: Edge | None) -> Iterator[list[Vertex]]:
        """H-paths obtained from a cycle source, each using every prescribed edge and no fault."""
        forest = self.ctx.forest(k)
        if chord is not None:
            cands = self._chord_paths(cyc, chord)
        else:
            size = len(cyc)
            ring = [make_edge(cyc[i], cyc[(i + 1) % size]) for i in range(size)]
            on = [i for i, e in enumerate(ring) if e in held]
            if len(on) > 1:
                return
            cuts = on or [i for i, e in enumerate(ring) if e not in forest.edges]
            cands = [cyc[i + 1 :] + cyc[: i + 1] for i in cuts]
        for path in cands:
            steps = {make_edge(a, b) for a, b in zip(path, path[1:])}
            if forest.edges <= steps and not steps & set(held):
                yield path

    def _cover_cycle_single(self, route: Route, st: _State, k: int, t: int) -> Iterator:
        for cyc, held, chord in self._cycles(route, st, k):
            found = []
            for path in self._cycle_paths(k, cyc, held, chord):
                for cand in (path, path[::-1]):
                    if self._slot_ok(route, st, k, (t, IN), cand[0]) and self._slot_ok(route, st, k, (t, OUT), cand[-1]):
                        found.append(({(t, IN): cand[0], (t, OUT): cand[-1]}, {t: cand}))
            tag = "cycle-open" + ("[chord]" if chord else "")
            yield from self._best(found, st, tag, held)

    def _cover_cycle_cut(self, route: Route, st: _State, k: int, segs: Sequence[int]) -> Iterator:
        for cyc, held, chord in self._cycles(route, st, k):
            if chord is None:
                yield from self._cuts_of_cycle(route, st, k, segs, cyc, held)
                continue
            for path in self._chord_paths(cyc, chord):
                yield from self._cuts_of_path(route, st, k, segs, path, held)

    def _cuts_of_cycle(self, route, st, k, segs, cyc, held) -> Iterator:
        forest = self.ctx.forest(k)
        size = len(cyc)
        edge_at = [make_edge(cyc[i], cyc[(i + 1) % size]) for i in range(size)]
        must = [i for i in range(size) if edge_at[i] in held]
        if len(must) > 2:
            return
        cuttable = [i for i in range(size) if edge_at[i] not in forest.edges]
        fixed = {w for s, w in st.assign.items() if route.block_of(s) == k}
        pos = {w: i for i, w in enumerate(cyc)}
        # a fixed end must sit next to a cut
        near = set()
        for w in fixed:
            near.update({pos[w], (pos[w] - 1) % size})
        first = [i for i in cuttable if not fixed or i in near]
        found = []
        for i in first:
            for j in cuttable:
                if j <= i and j in first:
                    continue
                if j == i:
                    continue
                a, b = min(i, j), max(i, j)
                if any(x not in (a, b) for x in must):
                    continue
                ends = {cyc[a], cyc[(a + 1) % size], cyc[b], cyc[(b + 1) % size]}
                if not fixed <= ends:
                    continue
                p1 = cyc[a + 1 : b + 1]
                p2 = cyc[b + 1 :] + cyc[: a + 1]
                m = self._match(route, st, k, segs, [p1, p2])
                if m is not None:
                    found.append(m)
                    if len(found) >= 4 * self.limits.cuts_per_structure:
                        break
            if len(found) >= 4 * self.limits.cuts_per_structure:
                break
        yield from self._best(found, st, "cycle-cut", held)

    def _cover_clean(self, route: Route, st: _State, k: int, segs: Sequence[int]) -> Iterator:
        if len(self.view.blocks[k]) > 64:
            return
        t1, t2 = segs
        slots = [(t1, IN), (t1, OUT), (t2, IN), (t2, OUT)]
        cands = [self._candidates(route, st, k, s)[:3] for s in slots]
        sub = self.view.sub
        tries = 0
        for combo in itertools.product(*cands):
            a1, b1, a2, b2 = combo
            if len({a1, b1, a2, b2}) < 4 - (a1 == b1) - (a2 == b2):
                continue
            if a1 == b1 and a2 == b2:
                continue
            if {a1, b1} & {a2, b2}:
                continue
            if (a1 == b1 and not route.single_ok(t1)) or (a2 == b2 and not route.single_ok(t2)):
                continue
            tries += 1
            if tries > self.limits.path_pairs:
                return
            pj = self.view.project
            pairs, removed = [], []
            for a, b in ((a1, b1), (a2, b2)):
                if a == b:
                    removed.append(pj(a))
                else:
                    pairs.append((pj(a), pj(b)))
            try:
                found = path_cover(sub, (), (), pairs, removed, node_budget=self.limits.node_budget)
            except SearchBudgetExceeded:
                continue
            if found is None:
                continue
            found = [[self.view.lift(w, k) for w in piece] for piece in found]
            segments = {}
            it = iter(found)
            for t, a, b in ((t1, a1, b1), (t2, a2, b2)):
                segments[t] = [a] if a == b else next(it)
            assign = dict(zip(slots, combo))
            mode = "cover" if len(pairs) == 2 else "minus-vertex"
            yield assign, segments, mode


def _components(edges: set[Edge], vertices) -> list[list[Vertex]] | None:
    """The paths of a spanning edge set, or None if it has a cycle or a degree above 2."""
    adj: dict[Vertex, list[Vertex]] = {w: [] for w in vertices}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    if any(len(ns) > 2 for ns in adj.values()):
        return None
    seen: set[Vertex] = set()
    comps = []
    for w in sorted(adj):
        if w in seen or len(adj[w]) == 2:
            continue
        comp, prev, cur = [w], None, w
        seen.add(w)
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            comp.append(cur)
            seen.add(cur)
        comps.append(comp)
    return comps if len(seen) == len(adj) else None
