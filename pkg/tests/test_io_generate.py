import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bhpath.constraints import BudgetExceeded
from bhpath.harness.compare import sample_instances
from bhpath.harness.generate import gen_instance, random_split
from bhpath.harness.io import (
    InputError,
    instance_from_json,
    path_from_json,
    read_instance,
    read_path,
    write_instance,
    write_path,
)

splits = st.integers(2, 4).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, 2 * n - 2).flatmap(lambda t: st.tuples(st.integers(0, t), st.just(t))))
)


@given(splits, st.integers(0, 10_000))
def test_generated_instances_honour_the_split(nt, seed):
    n, (nf, total) = nt
    inst = gen_instance(n, (nf, total - nf), seed)
    assert len(inst.faults) == nf
    assert len(inst.forest) == total - nf
    assert inst.load <= 2 * n - 2


@given(splits, st.integers(0, 10_000))
def test_json_round_trip(nt, seed):
    n, (nf, total) = nt
    inst = gen_instance(n, (nf, total - nf), seed)
    assert instance_from_json(json.loads(json.dumps(inst.to_json()))) == inst


def test_file_round_trip(tmp_path):
    inst = gen_instance(3, (2, 2), 4)
    write_instance(tmp_path / "i.json", inst)
    assert read_instance(tmp_path / "i.json") == inst
    path = ["000", "100"]
    write_path(tmp_path / "p.json", path, {"note": 1})
    assert read_path(tmp_path / "p.json") == path
    (tmp_path / "bare.json").write_text(json.dumps(path))
    assert read_path(tmp_path / "bare.json") == path


def test_seed_determinism():
    assert gen_instance(4, (3, 3), 99) == gen_instance(4, (3, 3), 99)
    assert sample_instances(3, 20, 4, 5) == sample_instances(3, 20, 4, 5)
    assert sample_instances(3, 20, 4, 5) != sample_instances(3, 20, 4, 6)


def test_generator_errors():
    with pytest.raises(BudgetExceeded):
        gen_instance(2, (2, 1), 0)
    with pytest.raises(ValueError):
        gen_instance(2, (-1, 1), 0)
    with pytest.raises(BudgetExceeded):
        gen_instance(1, (0, 1), 0)  # the budget at n = 1 is 0


def test_random_split_sums():
    rng = random.Random(0)
    for n in (2, 3, 4):
        nf, nl = random_split(n, rng)
        assert nf + nl == 2 * n - 2 and nf >= 0 and nl >= 0
        assert sum(random_split(n, rng, 3)) == 3


@pytest.mark.parametrize(
    "text,needle",
    [
        ('{"n": 2, "faults": [], "u": "00"', "line 1"),
        ('{"n": 2, "faults": [], "prescribed": [], "v": "01"}', "'u'"),
        ('{"n": "2", "u": "00", "v": "01"}', "'n'"),
        ('{"n": 2, "faults": [["00"]], "u": "00", "v": "10"}', "faults[0]"),
        ('{"n": 2, "faults": [["00", "20"]], "u": "00", "v": "10"}', "not an edge"),
        ('{"n": 2, "u": "00", "v": "02"}', "same part"),
        ('[1, 2]', "JSON object"),
    ],
)
def test_malformed_instances_name_the_problem(tmp_path, text, needle):
    f = tmp_path / "bad.json"
    f.write_text(text)
    with pytest.raises(InputError, match=needle.replace("[", r"\[")):
        read_instance(f)


def test_budget_field_and_override():
    doc = {"n": 1, "faults": [["2", "3"]], "u": "0", "v": "3"}
    with pytest.raises(InputError, match="budget"):
        instance_from_json(doc)
    assert instance_from_json({**doc, "budget": 1}).budget == 1
    assert instance_from_json(doc, enforce_budget=False).faults == {("2", "3")}


def test_path_json_errors():
    with pytest.raises(InputError):
        path_from_json({"nope": []})
    with pytest.raises(InputError, match=r"path\[1\]"):
        path_from_json(["00", 3])
