"""Structural model of the balanced hypercube BH_n.

Vertices are digit strings ``x0 x1 ... x_{n-1}`` over ``{0,1,2,3}``; digit 0 is the
leftmost digit.  Edges are 2-tuples of vertex strings with the lexicographically
smaller endpoint first.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator

Vertex = str
Edge = tuple[str, str]


class TopologyError(ValueError):
    """Invalid vertex, dimension or edge for a given BH_n."""


class NotAnEdge(TopologyError):
    pass


class UnsupportedDimension(TopologyError):
    """Partitions along dimension 0 (and automorphisms touching digit 0) are not provided."""


class Parity(enum.Enum):
    EVEN = 0
    ODD = 1

    def flip(self) -> "Parity":
        return Parity.ODD if self is Parity.EVEN else Parity.EVEN


def make_edge(a: Vertex, b: Vertex) -> Edge:
    return (a, b) if a <= b else (b, a)


def parity(v: Vertex) -> Parity:
    return Parity.EVEN if int(v[0]) % 2 == 0 else Parity.ODD


def is_even(v: Vertex) -> bool:
    return v[0] in "02"


def _step(x0: int) -> int:
    return 1 if x0 % 2 == 0 else -1


@dataclass(frozen=True)
class BalancedHypercube:
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise TopologyError(f"dimension must be a positive integer, got {self.n!r}")

    # -- vertices ---------------------------------------------------------
    @property
    def order(self) -> int:
        return 4**self.n

    @cached_property
    def names(self) -> tuple[Vertex, ...]:
        out = []
        for k in range(self.order):
            digits = []
            for _ in range(self.n):
                digits.append(str(k % 4))
                k //= 4
            out.append("".join(reversed(digits)))
        return tuple(out)

    def index(self, v: Vertex) -> int:
        return int(v, 4)

    def vertices(self) -> tuple[Vertex, ...]:
        return self.names

    def check_vertex(self, v: Vertex) -> Vertex:
        if not isinstance(v, str) or len(v) != self.n or any(c not in "0123" for c in v):
            raise TopologyError(f"{v!r} is not a vertex of BH_{self.n}")
        return v

    def check_dimension(self, j: int) -> int:
        if not isinstance(j, int) or not 0 <= j < self.n:
            raise TopologyError(f"dimension {j!r} out of range for BH_{self.n}")
        return j

    # -- adjacency --------------------------------------------------------
    def neighbor(self, v: Vertex, j: int, sign: int) -> Vertex:
        """The ``j``-dimensional neighbour ``v^{j+}`` (sign=+1) or ``v^{j-}`` (sign=-1)."""
        self.check_dimension(j)
        if sign not in (1, -1):
            raise TopologyError(f"sign must be +1 or -1, got {sign!r}")
        d = [int(c) for c in v]
        x0 = d[0]
        d[0] = (x0 + sign) % 4
        if j > 0:
            d[j] = (d[j] + _step(x0)) % 4
        return "".join(map(str, d))

    def neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        return tuple(self.neighbor(v, j, s) for j in range(self.n) for s in (1, -1))

    def shadow(self, v: Vertex) -> Vertex:
        return str((int(v[0]) + 2) % 4) + v[1:]

    def is_edge(self, a: Vertex, b: Vertex) -> bool:
        return self._dimension_or_none(a, b) is not None

    def _dimension_or_none(self, a: Vertex, b: Vertex) -> int | None:
        if len(a) != self.n or len(b) != self.n:
            return None
        a0, b0 = int(a[0]), int(b[0])
        if (b0 - a0) % 4 not in (1, 3):
            return None
        diff = [k for k in range(1, self.n) if a[k] != b[k]]
        if not diff:
            return 0
        if len(diff) > 1:
            return None
        k = diff[0]
        if (int(b[k]) - int(a[k])) % 4 != _step(a0) % 4:
            return None
        return k

    def edge_dimension(self, e: Iterable[Vertex]) -> int:
        a, b = e
        k = self._dimension_or_none(a, b)
        if k is None:
            raise NotAnEdge(f"({a}, {b}) is not an edge of BH_{self.n}")
        return k

    def check_edge(self, a: Vertex, b: Vertex) -> Edge:
        self.check_vertex(a)
        self.check_vertex(b)
        self.edge_dimension((a, b))
        return make_edge(a, b)

    def edges(self) -> Iterator[Edge]:
        for v in self.names:
            for w in self.neighbors(v):
                if v < w:
                    yield (v, w)

    # int-indexed adjacency used by the search code
    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(sorted({self.index(w) for w in self.neighbors(v)})) for v in self.names
        )

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        out = []
        for nbrs in self.adjacency:
            m = 0
            for w in nbrs:
                m |= 1 << w
            out.append(m)
        return tuple(out)

    # -- automorphisms ----------------------------------------------------
    def digit_shift_automorphism(self, d: int, c: int) -> "Relabeling":
        """Add ``c`` (mod 4) to digit ``d``; permutes the blocks along ``d`` cyclically."""
        if not isinstance(d, int) or not 1 <= d < self.n:
            raise UnsupportedDimension(f"digit shift needs 1 <= d < {self.n}, got {d!r}")
        c %= 4

        def fwd(v: Vertex) -> Vertex:
            return v[:d] + str((int(v[d]) + c) % 4) + v[d + 1 :]

        def back(v: Vertex) -> Vertex:
            return v[:d] + str((int(v[d]) - c) % 4) + v[d + 1 :]

        return Relabeling(fwd, back, preserves_parity=True)

    def swap_digit_automorphism(self, a: int, b: int) -> "Relabeling":
        for k in (a, b):
            if not isinstance(k, int) or not 1 <= k < self.n:
                raise UnsupportedDimension(f"digit swap needs 1 <= a, b < {self.n}, got {k!r}")

        def fwd(v: Vertex) -> Vertex:
            d = list(v)
            d[a], d[b] = d[b], d[a]
            return "".join(d)

        return Relabeling(fwd, fwd, preserves_parity=True)

    def reflection_automorphism(self) -> "Relabeling":
        """``x0 -> x0+1`` and ``xk -> -xk`` for k >= 1.

        Swaps the two parts of the bipartition and maps block ``i`` of any
        partition to block ``-i``.
        """

        def fwd(v: Vertex) -> Vertex:
            return str((int(v[0]) + 1) % 4) + "".join(str(-int(c) % 4) for c in v[1:])

        def back(v: Vertex) -> Vertex:
            return str((int(v[0]) - 1) % 4) + "".join(str(-int(c) % 4) for c in v[1:])

        return Relabeling(fwd, back, preserves_parity=False)

    # -- recursive structure ---------------------------------------------
    def partition(self, j: int) -> "PartitionView":
        if self.n < 2:
            raise TopologyError("BH_1 has no partition into smaller balanced hypercubes")
        self.check_dimension(j)
        if j == 0:
            raise UnsupportedDimension(
                "partition along dimension 0 is not provided; use a dimension in 1..n-1"
            )
        return PartitionView(self, j)


@dataclass(frozen=True)
class Relabeling:
    """A vertex bijection of BH_n together with its inverse."""

    forward: Callable[[Vertex], Vertex]
    backward: Callable[[Vertex], Vertex]
    preserves_parity: bool = True

    def __call__(self, v: Vertex) -> Vertex:
        return self.forward(v)

    def edge(self, e: Edge) -> Edge:
        return make_edge(self.forward(e[0]), self.forward(e[1]))

    def inverse(self) -> "Relabeling":
        return Relabeling(self.backward, self.forward, self.preserves_parity)

    def then(self, other: "Relabeling") -> "Relabeling":
        """Apply ``self`` first, then ``other``."""
        f, g = self.forward, other.forward
        fb, gb = self.backward, other.backward
        return Relabeling(
            lambda v: g(f(v)),
            lambda v: fb(gb(v)),
            self.preserves_parity == other.preserves_parity,
        )


IDENTITY = Relabeling(lambda v: v, lambda v: v, True)


@dataclass(frozen=True)
class PartitionView:
    """The four copies B^0..B^3 of BH_{n-1} obtained by deleting the j-dimensional edges.

    Block ``i`` holds the vertices whose digit ``j`` equals ``i``.  An even vertex of
    B^i has both of its j-dimensional neighbours in B^{i+1}; an odd vertex has both
    in B^{i-1}.
    """

    h: BalancedHypercube
    j: int

    @property
    def sub(self) -> BalancedHypercube:
        return BalancedHypercube(self.h.n - 1)

    def block_of(self, v: Vertex) -> int:
        return int(v[self.j])

    @cached_property
    def blocks(self) -> tuple[tuple[Vertex, ...], ...]:
        out: list[list[Vertex]] = [[], [], [], []]
        for v in self.h.names:
            out[int(v[self.j])].append(v)
        return tuple(tuple(b) for b in out)

    def project(self, v: Vertex) -> Vertex:
        """Drop digit j: an isomorphism from each block onto BH_{n-1}."""
        return v[: self.j] + v[self.j + 1 :]

    def lift(self, w: Vertex, i: int) -> Vertex:
        return w[: self.j] + str(i % 4) + w[self.j :]

    def cross(self, v: Vertex) -> tuple[Vertex, Vertex]:
        """``(v^+, v^-)``: the two j-dimensional neighbours (shadows of each other)."""
        return self.h.neighbor(v, self.j, 1), self.h.neighbor(v, self.j, -1)

    def is_crossing(self, e: Edge) -> bool:
        return e[0][self.j] != e[1][self.j]

    def crossing_edges(self) -> Iterator[Edge]:
        for v in self.h.names:
            for w in self.cross(v):
                if v < w:
                    yield (v, w)

    def block_neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        """Neighbours of ``v`` inside its own block, in lexicographic order."""
        return tuple(sorted(w for w in self.h.neighbors(v) if w[self.j] == v[self.j]))
