"""Seeded random instances within the 2n-2 envelope."""
from __future__ import annotations

import random

from ..constraints import BudgetExceeded, Instance, LinearForest, compatible, validate_instance
from ..topology import BalancedHypercube, is_even

MAX_TRIES = 200


class SamplingExhausted(RuntimeError):
    """No instance with the requested split was found within the retry bound."""


def gen_instance(n: int, budget_split: tuple[int, int], seed: int) -> Instance:
    """A random instance with exactly |F| faults and |E(L)| prescribed edges.

    F is a uniform edge subset, L is grown edge by edge from BH_n - F keeping it a
    linear forest, and (u, v) is a uniform compatible even/odd pair.
    """
    nf, nl = budget_split
    if nf < 0 or nl < 0:
        raise ValueError("budget split entries must be non-negative")
    if nf + nl > 2 * n - 2:
        raise BudgetExceeded(f"|F|+|E(L)| = {nf + nl} exceeds the budget {2 * n - 2}")
    rng = random.Random(seed)
    h = BalancedHypercube(n)
    edges = sorted(h.edges())
    evens = [x for x in h.names if is_even(x)]
    odds = [x for x in h.names if not is_even(x)]
    for _ in range(MAX_TRIES):
        faults = frozenset(rng.sample(edges, nf))
        pool = [e for e in edges if e not in faults]
        rng.shuffle(pool)
        forest = LinearForest()
        for e in pool:
            if len(forest) == nl:
                break
            if forest.can_add(e):
                forest = forest.plus(e)
        if len(forest) < nl:
            continue
        for _ in range(50):
            u, v = rng.choice(evens), rng.choice(odds)
            if compatible(forest, u, v):
                return validate_instance(n, faults, forest.edges, u, v)
    raise SamplingExhausted(f"no instance for n={n}, split={budget_split} after {MAX_TRIES} tries")


def random_split(n: int, rng: random.Random, total: int | None = None) -> tuple[int, int]:
    """A (|F|, |E(L)|) split with |F|+|E(L)| = total (default: the full budget)."""
    total = 2 * n - 2 if total is None else total
    nf = rng.randint(0, total)
    return nf, total - nf
