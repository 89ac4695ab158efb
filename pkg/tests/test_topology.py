from collections import deque

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bhpath.topology import (
    BalancedHypercube,
    NotAnEdge,
    Parity,
    TopologyError,
    UnsupportedDimension,
    is_even,
    make_edge,
    parity,
)

SMALL = [1, 2, 3, 4]


@st.composite
def vertices(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    digits = draw(st.lists(st.sampled_from("0123"), min_size=n, max_size=n))
    return BalancedHypercube(n), "".join(digits)


@pytest.mark.parametrize("n", SMALL + [5])
def test_order_degree_and_balanced_parts(n):
    h = BalancedHypercube(n)
    assert len(h.names) == 4**n == h.order
    assert len(set(h.names)) == h.order
    evens = [v for v in h.names if is_even(v)]
    assert len(evens) == h.order // 2
    for v in h.names:
        nbrs = h.neighbors(v)
        assert len(set(nbrs)) == 2 * n
        assert all(is_even(w) != is_even(v) for w in nbrs)


@pytest.mark.parametrize("n", SMALL)
def test_edge_count(n):
    assert sum(1 for _ in BalancedHypercube(n).edges()) == 4**n * n


@pytest.mark.parametrize("n", SMALL)
def test_adjacency_is_symmetric_and_matches_is_edge(n):
    h = BalancedHypercube(n)
    for v in h.names:
        for w in h.neighbors(v):
            assert v in h.neighbors(w)
            assert h.is_edge(v, w)
    # spot check non-edges: same-parity pairs are never adjacent
    assert not h.is_edge(h.names[0], h.shadow(h.names[0]))


@pytest.mark.parametrize("n", SMALL)
def test_shadow_is_fixed_point_free_involution_with_same_neighbourhood(n):
    h = BalancedHypercube(n)
    for v in h.names:
        s = h.shadow(v)
        assert s != v
        assert h.shadow(s) == v
        assert set(h.neighbors(v)) == set(h.neighbors(s))


def test_shadow_of_plus_neighbour_is_minus_neighbour():
    h = BalancedHypercube(3)
    for v in h.names:
        for j in range(3):
            assert h.shadow(h.neighbor(v, j, 1)) == h.neighbor(v, j, -1)


@given(vertices())
def test_neighbour_rule(hv):
    h, v = hv
    x0 = int(v[0])
    step = 1 if x0 % 2 == 0 else -1
    for j in range(1, h.n):
        w = h.neighbor(v, j, 1)
        assert int(w[0]) == (x0 + 1) % 4
        assert int(w[j]) == (int(v[j]) + step) % 4
        assert h.edge_dimension((v, w)) == j
    assert h.edge_dimension((v, h.neighbor(v, 0, -1))) == 0


@given(vertices())
def test_parity_helpers_agree(hv):
    _, v = hv
    assert (parity(v) is Parity.EVEN) == is_even(v)
    assert parity(v).flip() is not parity(v)


def _components(h, j):
    seen, comps = set(), []
    for s in h.names:
        if s in seen:
            continue
        comp, queue = {s}, deque([s])
        while queue:
            x = queue.popleft()
            for w in h.neighbors(x):
                if h.edge_dimension((x, w)) != j and w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


@pytest.mark.parametrize("n,j", [(n, j) for n in (2, 3, 4) for j in range(1, n)])
def test_partition_blocks_are_components_isomorphic_to_smaller_cube(n, j):
    h = BalancedHypercube(n)
    view = h.partition(j)
    assert set(_components(h, j)) == {frozenset(b) for b in view.blocks}
    sub = view.sub
    sub_edges = set(sub.edges())
    for i, block in enumerate(view.blocks):
        assert len(block) == 4 ** (n - 1)
        assert all(view.block_of(v) == i for v in block)
        assert sorted(view.project(v) for v in block) == sorted(sub.names)
        inner = {make_edge(view.project(a), view.project(b)) for a in block for b in view.block_neighbors(a)}
        assert inner == sub_edges
        for v in block:
            assert view.lift(view.project(v), i) == v
            assert is_even(view.project(v)) == is_even(v)


@pytest.mark.parametrize("n,j", [(n, j) for n in (2, 3, 4) for j in range(1, n)])
def test_crossing_neighbours_sit_in_one_adjacent_block(n, j):
    h = BalancedHypercube(n)
    view = h.partition(j)
    for v in h.names:
        plus, minus = view.cross(v)
        i = view.block_of(v)
        target = (i + 1) % 4 if is_even(v) else (i - 1) % 4
        assert view.block_of(plus) == view.block_of(minus) == target
        assert h.shadow(plus) == minus
        assert view.is_crossing(make_edge(v, plus))
    # distinct vertices of one block have distinct + (and -) neighbours
    for block in view.blocks:
        assert len({view.cross(v)[0] for v in block}) == len(block)
        assert len({view.cross(v)[1] for v in block}) == len(block)


def test_bh2_crossing_example():
    view = BalancedHypercube(2).partition(1)
    # "01" is even and lies in block 1, so both crossing neighbours are in block 2
    assert view.cross("01") == ("12", "32")
    assert [view.block_of(w) for w in view.cross("01")] == [2, 2]


def test_bh3_crossing_edges_between_adjacent_blocks():
    view = BalancedHypercube(3).partition(2)
    pairs = {}
    for a, b in view.crossing_edges():
        key = frozenset((view.block_of(a), view.block_of(b)))
        pairs[key] = pairs.get(key, 0) + 1
    assert set(pairs.values()) == {16}
    assert len(pairs) == 4


def _automorphism_ok(h, r):
    for v in h.names:
        assert r.backward(r(v)) == v
        if r.preserves_parity:
            assert is_even(r(v)) == is_even(v)
        else:
            assert is_even(r(v)) != is_even(v)
    images = {r(v) for v in h.names}
    assert len(images) == h.order
    for a, b in h.edges():
        assert h.is_edge(r(a), r(b))


@pytest.mark.parametrize("n", [2, 3])
def test_digit_shifts_are_automorphisms(n):
    h = BalancedHypercube(n)
    for d in range(1, n):
        for c in range(4):
            _automorphism_ok(h, h.digit_shift_automorphism(d, c))


@pytest.mark.parametrize("n", [3, 4])
def test_digit_swaps_are_automorphisms(n):
    h = BalancedHypercube(n)
    for a in range(1, n):
        for b in range(1, n):
            _automorphism_ok(h, h.swap_digit_automorphism(a, b))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_reflection_is_an_automorphism_that_flips_parts(n):
    h = BalancedHypercube(n)
    _automorphism_ok(h, h.reflection_automorphism())


def test_digit_shift_rotates_blocks():
    h = BalancedHypercube(3)
    view = h.partition(2)
    r = h.digit_shift_automorphism(2, 3)
    assert all(view.block_of(r(v)) == (view.block_of(v) + 3) % 4 for v in h.names)


def test_errors():
    with pytest.raises(TopologyError):
        BalancedHypercube(0)
    h = BalancedHypercube(2)
    with pytest.raises(TopologyError):
        h.check_vertex("04")
    with pytest.raises(TopologyError):
        h.check_vertex("000")
    with pytest.raises(NotAnEdge):
        h.check_edge("00", "20")
    with pytest.raises(UnsupportedDimension):
        h.partition(0)
    with pytest.raises(TopologyError):
        BalancedHypercube(1).partition(1)
    with pytest.raises(UnsupportedDimension):
        h.digit_shift_automorphism(0, 1)
