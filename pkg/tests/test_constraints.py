import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bhpath.constraints import (
    BudgetExceeded,
    FaultForestOverlap,
    Incompatible,
    Instance,
    LinearForest,
    NotAForest,
    SameParityEndpoints,
    compatible,
    restrict,
    validate_instance,
    validate_linear_forest,
)
from bhpath.harness.generate import gen_instance, random_split
from bhpath.topology import BalancedHypercube, NotAnEdge, make_edge

H3 = BalancedHypercube(3)
EDGES3 = sorted(H3.edges())


@st.composite
def forests(draw, h=H3, max_edges=8):
    """Grow a linear forest by adding random edges that keep it linear."""
    edges = sorted(h.edges())
    picks = draw(st.lists(st.sampled_from(edges), max_size=max_edges))
    forest = LinearForest()
    for e in picks:
        if forest.can_add(e):
            forest = forest.plus(e)
    return forest


def test_path_and_endpoints():
    f = LinearForest.from_edges([("00", "11"), ("11", "20")])
    assert f.paths == (("00", "11", "20"),)
    assert f.internal_vertices == {"11"}
    assert f.end_vertices == {"00", "20"}
    assert f.other_end("00") == "20"
    assert f.other_end("11") is None
    assert ("11", "00") in f


def test_rejects_degree_three_and_cycles():
    with pytest.raises(NotAForest, match="degree"):
        LinearForest.from_edges([("00", "11"), ("00", "31"), ("00", "10")])
    h = BalancedHypercube(1)
    with pytest.raises(NotAForest, match="cycle"):
        validate_linear_forest(h, [("0", "1"), ("1", "2"), ("2", "3"), ("3", "0")])
    with pytest.raises(NotAnEdge):
        validate_linear_forest(BalancedHypercube(2), [("00", "20")])


@given(forests())
def test_minus_any_edge_is_linear(forest):
    for e in forest.edges:
        assert forest.minus(e)._violation() is None


@given(forests(), st.sampled_from(EDGES3))
def test_can_add_agrees_with_plus(forest, e):
    if e in forest:
        assert not forest.can_add(e)
        return
    try:
        grown = forest.plus(e)
    except NotAForest:
        assert not forest.can_add(e)
    else:
        assert forest.can_add(e)
        assert len(grown) == len(forest) + 1


@given(forests())
def test_joining_two_components_at_ends_is_linear(forest):
    ends = sorted(forest.end_vertices)
    for a in ends:
        for b in H3.neighbors(a):
            if b in ends and forest.other_end(a) != b and make_edge(a, b) not in forest:
                assert forest.can_add((a, b))
                assert forest.plus((a, b))._violation() is None


@given(forests(), st.sampled_from(H3.names), st.sampled_from(H3.names))
def test_compatible_is_symmetric(forest, u, v):
    assert compatible(forest, u, v) == compatible(forest, v, u)


def test_compatible_examples():
    f = LinearForest.from_edges([("00", "11"), ("11", "20")])
    assert not compatible(f, "11", "01")  # internal vertex
    assert not compatible(f, "00", "20")  # both ends of one path
    assert compatible(f, "00", "01")


def test_validate_instance_errors():
    with pytest.raises(SameParityEndpoints):
        validate_instance(2, [], [], "00", "20")
    with pytest.raises(FaultForestOverlap):
        validate_instance(2, [("00", "11")], [("00", "11")], "00", "01")
    with pytest.raises(BudgetExceeded):
        validate_instance(2, [("00", "11"), ("00", "31"), ("00", "10")], [], "00", "01")
    with pytest.raises(Incompatible):
        validate_instance(2, [], [("00", "11")], "00", "11")


def test_validate_instance_puts_even_endpoint_first():
    inst = validate_instance(2, [], [], "01", "10")
    assert (inst.u, inst.v) == ("01", "10")
    inst = validate_instance(2, [], [], "10", "01")
    assert (inst.u, inst.v) == ("01", "10")


def test_restrict_prescribed_crossing_example():
    inst = validate_instance(2, [], [("00", "11")], "02", "12")
    blocks = restrict(inst, inst.h.partition(1))
    assert blocks.crossing_prescribed == {("00", "11")}
    assert all(len(f) == 0 for f in blocks.forests)


def test_restrict_block_fault_example():
    inst = validate_instance(2, [("00", "10")], [], "02", "12")
    blocks = restrict(inst, inst.h.partition(1))
    assert blocks.faults[0] == {("00", "10")}
    assert not blocks.crossing_faults


@pytest.mark.parametrize("n", [2, 3, 4])
def test_restrict_conserves_cardinalities(n):
    rng = random.Random(n)
    h = BalancedHypercube(n)
    for k in range(60):
        inst = gen_instance(n, random_split(n, rng), 1000 * n + k)
        for j in range(1, n):
            b = restrict(inst, h.partition(j))
            assert sum(len(f) for f in b.forests) + len(b.crossing_prescribed) == len(inst.forest)
            assert sum(len(f) for f in b.faults) + len(b.crossing_faults) == len(inst.faults)


def test_instance_json_shape():
    inst = Instance(2, frozenset({("00", "10")}), LinearForest(), "02", "12")
    assert inst.budget == 2
    assert inst.to_json() == {"n": 2, "faults": [["00", "10"]], "prescribed": [], "u": "02", "v": "12"}
