"""Constructor runs over seeded random instances, cross-checked by the oracle."""
from __future__ import annotations

import json
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from ..constraints import Instance
from ..constructor import ConstructionFailure, Infeasible, UnsupportedCase, build
from ..solvers import SearchBudgetExceeded, solve_instance
from .generate import gen_instance
from .validate import validate_path


class CompareError(RuntimeError):
    """A validation failure or an oracle disagreement; carries the instance."""

    def __init__(self, message: str, instance: Instance):
        super().__init__(f"{message}: {json.dumps(instance.to_json())}")
        self.instance = instance


@dataclass
class RunStats:
    n: int
    seed: int
    instances: int = 0
    successes: int = 0
    oracle_agreements: int = 0
    failures: int = 0
    wall_time: float = 0.0
    unsupported: int = 0
    inconclusive: int = 0
    oracle_checked: int = 0
    cases: Counter = field(default_factory=Counter)

    def to_json(self) -> dict:
        d = asdict(self)
        d["cases"] = dict(sorted(self.cases.items()))
        return d


@dataclass
class Outcome:
    index: int
    instance: Instance
    status: str  # "ok" | "unsupported-ok" | "failed" | "invalid"
    case: str
    oracle: str  # "skip" | "agree" | "disagree" | "inconclusive"
    detail: str = ""
    unsupported: bool = False


def sample_instances(n: int, count: int, budget: int, seed: int) -> list[Instance]:
    """``count`` instances with |F|+|E(L)| drawn uniformly from 0..budget."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        total = rng.randint(0, budget)
        nf = rng.randint(0, total)
        out.append(gen_instance(n, (nf, total - nf), seed * 1_000_003 + i))
    return out


def _oracle(instance: Instance, node_budget: int | None) -> bool | None:
    try:
        return solve_instance(instance, node_budget) is not None
    except SearchBudgetExceeded:
        return None


def run_one(index: int, instance: Instance, check_oracle: bool, node_budget: int | None) -> Outcome:
    try:
        res = build(instance, node_budget)
        path, case, status = res.path, res.trace.case or res.trace.method, "ok"
    except UnsupportedCase as e:
        # unsupported cases are handed to the exhaustive solver on their own
        case = type(e).__name__
        found = solve_instance(instance, node_budget) if instance.n <= 3 else None
        if found is None:
            return Outcome(index, instance, "failed", case, "skip", str(e), unsupported=True)
        path, status = found, "unsupported-ok"
    except Infeasible as e:
        # raised only after the exhaustive solver has shown there is no path
        return Outcome(index, instance, "failed", "Infeasible", "agree" if check_oracle else "skip", str(e))
    except ConstructionFailure as e:
        verdict = _oracle(instance, node_budget) if check_oracle else None
        oracle = "skip" if not check_oracle else "inconclusive" if verdict is None else "disagree" if verdict else "agree"
        return Outcome(index, instance, "failed", "ConstructionFailure", oracle, str(e))
    report = validate_path(instance, path)
    unsupported = status == "unsupported-ok"
    if not report.ok:
        return Outcome(index, instance, "invalid", case, "skip", json.dumps(report.to_json()), unsupported)
    oracle = "skip"
    if check_oracle:
        verdict = _oracle(instance, node_budget)
        oracle = "inconclusive" if verdict is None else "agree" if verdict else "disagree"
    return Outcome(index, instance, status, case, oracle, unsupported=unsupported)


def _run_one(args: tuple) -> Outcome:
    return run_one(*args)


def run_compare(
    n: int,
    count: int,
    budget: int,
    seed: int,
    oracle_sample: int | None = None,
    node_budget: int | None = None,
    workers: int = 1,
    abort: bool = True,
) -> RunStats:
    """Construct and validate ``count`` seeded instances; cross-check feasibility at n <= 3.

    ``oracle_sample`` limits the oracle cross-check to the first that many instances.
    """
    start = time.perf_counter()
    stats = RunStats(n, seed)
    insts = sample_instances(n, count, budget, seed)
    limit = len(insts) if oracle_sample is None else oracle_sample
    jobs = [(i, inst, n <= 3 and i < limit, node_budget) for i, inst in enumerate(insts)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            outcomes = list(pool.map(_run_one, jobs))
    else:
        outcomes = [_run_one(j) for j in jobs]
    for out in sorted(outcomes, key=lambda o: o.index):
        stats.instances += 1
        stats.cases[out.case] += 1
        if out.status in ("ok", "unsupported-ok"):
            stats.successes += 1
        else:
            stats.failures += 1
        stats.unsupported += out.unsupported
        if out.oracle != "skip":
            stats.oracle_checked += 1
        if out.oracle == "agree":
            stats.oracle_agreements += 1
        elif out.oracle == "inconclusive":
            stats.inconclusive += 1
        if abort and (out.status == "invalid" or out.oracle == "disagree"):
            raise CompareError(f"instance {out.index}: {out.status}, oracle {out.oracle} {out.detail}", out.instance)
    stats.wall_time = time.perf_counter() - start
    return stats
