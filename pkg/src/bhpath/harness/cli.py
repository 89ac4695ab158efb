"""Command line entry point: ``bhpath gen|solve|check|oracle|certify|compare|bench``."""
from __future__ import annotations

import json
import sys
import time

import click

from ..constraints import BudgetExceeded
from ..constructor import ConstructionFailure, Infeasible, UnsupportedCase, build
from ..solvers import SearchBudgetExceeded, certify, solve_instance
from .compare import CompareError, run_compare, sample_instances
from .generate import SamplingExhausted, gen_instance
from .io import InputError, read_instance, read_path, write_instance, write_path
from .validate import validate_path

EXIT_OK, EXIT_INFEASIBLE, EXIT_UNSUPPORTED, EXIT_BUDGET = 0, 1, 2, 3


def _emit(as_json: bool, doc: dict, text: str) -> None:
    click.echo(json.dumps(doc, indent=2) if as_json else text)


def _split(value: str | None, faults: int | None, prescribed: int | None, n: int) -> tuple[int, int]:
    if value:
        try:
            a, b = (int(x) for x in value.split(","))
        except ValueError:
            raise click.BadParameter("expected F,L, e.g. 2,2", param_hint="--budget-split") from None
        return a, b
    nf = 0 if faults is None else faults
    nl = (2 * n - 2 - nf) if prescribed is None else prescribed
    return nf, max(nl, 0)


@click.group()
def main() -> None:
    """Fault-tolerant prescribed hamiltonian paths in balanced hypercubes."""


@main.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--faults", type=int, default=None, help="|F|")
@click.option("--prescribed", type=int, default=None, help="|E(L)|")
@click.option("--budget-split", default=None, help="F,L as one pair")
@click.option("--seed", type=int, default=0)
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None)
def gen(n, faults, prescribed, budget_split, seed, out):
    """Sample a random instance."""
    try:
        inst = gen_instance(n, _split(budget_split, faults, prescribed, n), seed)
    except (BudgetExceeded, SamplingExhausted, ValueError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_INFEASIBLE)
    if out:
        write_instance(out, inst)
    else:
        click.echo(json.dumps(inst.to_json(), indent=2))


def _read(path: str, enforce_budget: bool = True):
    try:
        return read_instance(path, enforce_budget)
    except InputError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_INFEASIBLE)


@main.command()
@click.option("--in", "src", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None)
@click.option("--node-budget", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def solve(src, out, node_budget, as_json):
    """Build a path with the recursive constructor."""
    inst = _read(src)
    try:
        res = build(inst, node_budget)
    except Infeasible as e:
        _emit(as_json, {"status": "infeasible", "detail": str(e)}, f"infeasible: {e}")
        sys.exit(EXIT_INFEASIBLE)
    except UnsupportedCase as e:
        _emit(as_json, {"status": "unsupported", "detail": str(e)}, f"unsupported: {e}")
        sys.exit(EXIT_UNSUPPORTED)
    except SearchBudgetExceeded as e:
        _emit(as_json, {"status": "budget-exceeded", "detail": str(e)}, f"budget exceeded: {e}")
        sys.exit(EXIT_BUDGET)
    except ConstructionFailure as e:
        _emit(as_json, {"status": "failed", "detail": str(e), "context": e.context}, f"construction failed: {e}")
        sys.exit(EXIT_INFEASIBLE)
    if out:
        write_path(out, res.path, {"trace": res.trace.to_json()})
    doc = {"status": "ok", "trace": res.trace.to_json(), "path": res.path}
    _emit(as_json, doc, " ".join(res.path) if not out else f"ok: {res.trace.case or res.trace.method}")


@main.command()
@click.option("--in", "src", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--path", "path_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--json", "as_json", is_flag=True)
def check(src, path_file, as_json):
    """Validate a path file against an instance."""
    inst = _read(src)
    try:
        path = read_path(path_file)
    except InputError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_INFEASIBLE)
    report = validate_path(inst, path)
    text = "ok" if report.ok else "\n".join(f"{v.kind.value}: {v.detail}" for v in report.violations)
    _emit(as_json, report.to_json(), text)
    sys.exit(EXIT_OK if report.ok else EXIT_INFEASIBLE)


@main.command()
@click.option("--in", "src", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None)
@click.option("--node-budget", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def oracle(src, out, node_budget, as_json):
    """Solve an instance by exhaustive search (any budget)."""
    inst = _read(src, enforce_budget=False)
    try:
        path = solve_instance(inst, node_budget)
    except SearchBudgetExceeded as e:
        _emit(as_json, {"status": "budget-exceeded", "detail": str(e)}, f"budget exceeded: {e}")
        sys.exit(EXIT_BUDGET)
    if path is None:
        _emit(as_json, {"status": "infeasible"}, "infeasible")
        sys.exit(EXIT_INFEASIBLE)
    if out:
        write_path(out, path)
    _emit(as_json, {"status": "ok", "path": path}, " ".join(path))


@main.command(name="certify")
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--node-budget", type=int, default=None)
@click.option("--sample", type=int, default=None, help="random subset of (F, L) pairs")
@click.option("--seed", type=int, default=0)
@click.option("--json", "as_json", is_flag=True)
def certify_cmd(n, k, node_budget, sample, seed, as_json):
    """Exhaustively check every instance of BH_n with budget k."""
    start = time.perf_counter()
    report = certify(n, k, node_budget, sample, seed)
    elapsed = time.perf_counter() - start
    doc = {**report.to_json(), "wall_time": elapsed}
    text = (
        f"BH_{n}, k={k}: {report.instances_checked} instances, {len(report.failures)} failures, "
        f"{len(report.inconclusive)} inconclusive ({elapsed:.1f}s)"
    )
    if report.failures and not as_json:
        text += "\nfirst failure: " + json.dumps(report.failures[0].to_json())
    _emit(as_json, doc, text)
    if report.inconclusive and not report.failures:
        sys.exit(EXIT_BUDGET)
    sys.exit(EXIT_OK if report.ok else EXIT_INFEASIBLE)


@main.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--count", type=int, default=100)
@click.option("--budget", type=int, default=None, help="max |F|+|E(L)| (default 2n-2)")
@click.option("--seed", type=int, default=42)
@click.option("--oracle-sample", type=int, default=None)
@click.option("--node-budget", type=int, default=None)
@click.option("--workers", type=int, default=1)
@click.option("--json", "as_json", is_flag=True)
def compare(n, count, budget, seed, oracle_sample, node_budget, workers, as_json):
    """Constructor vs oracle on seeded random instances."""
    budget = 2 * n - 2 if budget is None else budget
    try:
        stats = run_compare(n, count, budget, seed, oracle_sample, node_budget, workers)
    except CompareError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_INFEASIBLE)
    text = (
        f"n={n}: {stats.successes}/{stats.instances} ok, {stats.failures} failed, "
        f"{stats.unsupported} unsupported, oracle agreed {stats.oracle_agreements}/{stats.oracle_checked} "
        f"({stats.inconclusive} inconclusive), {stats.wall_time:.1f}s"
    )
    _emit(as_json, stats.to_json(), text)
    sys.exit(EXIT_OK if stats.failures == 0 else EXIT_INFEASIBLE)


@main.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--count", type=int, default=20)
@click.option("--budget", type=int, default=None)
@click.option("--seed", type=int, default=0)
@click.option("--json", "as_json", is_flag=True)
def bench(n, count, budget, seed, as_json):
    """Time the constructor on seeded random instances."""
    budget = 2 * n - 2 if budget is None else budget
    times, outcomes = [], {"ok": 0, "unsupported": 0, "failed": 0}
    for inst in sample_instances(n, count, budget, seed):
        start = time.perf_counter()
        try:
            build(inst)
            outcomes["ok"] += 1
        except UnsupportedCase:
            outcomes["unsupported"] += 1
        except (ConstructionFailure, SearchBudgetExceeded):
            outcomes["failed"] += 1
        times.append(time.perf_counter() - start)
    times.sort()
    doc = {
        "n": n,
        "count": count,
        **outcomes,
        "median_s": times[len(times) // 2] if times else 0.0,
        "max_s": times[-1] if times else 0.0,
        "total_s": sum(times),
    }
    text = (
        f"n={n}: {outcomes['ok']} ok, {outcomes['unsupported']} unsupported, {outcomes['failed']} failed; "
        f"median {doc['median_s']:.3f}s, max {doc['max_s']:.3f}s"
    )
    _emit(as_json, doc, text)


if __name__ == "__main__":
    main()
