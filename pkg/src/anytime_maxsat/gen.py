"""Seed-deterministic generators for desk-scale benchmark instances.

Two families:

* ``random-wpms`` — random 3-literal clauses; the hard part is planted
  satisfiable around a hidden assignment, soft clauses carry random weights.
* ``staircase`` — a hard implication chain x_{i+1} -> x_i restricts feasible
  assignments to prefixes of ones; opposing unit soft clauses (x_i, weight 2)
  and (-x_i, weight 1) put every stair on a dynamic-weight plateau, so local
  search climbs one gradual step at a time. The unique optimum is all-ones
  with cost n.
"""

from __future__ import annotations

import random

from .wcnf import Clause, WcnfInstance

KINDS = ("random-wpms", "staircase")


def random_wpms(n: int, m: int, seed: int, max_weight: int = 9) -> WcnfInstance:
    """Random weighted PMS with n variables and m clauses (about m/4 hard)."""
    if n < 1 or m < 1:
        raise ValueError("random-wpms needs n >= 1 and m >= 1")
    rng = random.Random(seed)
    hidden = [rng.random() < 0.5 for _ in range(n)]
    k = min(3, n)
    num_hard = max(1, m // 4) if m > 1 else 0

    def random_lits() -> list[int]:
        chosen = rng.sample(range(1, n + 1), k)
        return [v if rng.random() < 0.5 else -v for v in chosen]

    hard: list[Clause] = []
    for _ in range(num_hard):
        lits = random_lits()
        if not any((lit > 0) == hidden[abs(lit) - 1] for lit in lits):
            # plant satisfiability: align one literal with the hidden assignment
            i = rng.randrange(len(lits))
            v = abs(lits[i])
            lits[i] = v if hidden[v - 1] else -v
        hard.append(Clause(tuple(lits)))

    soft = [
        Clause(tuple(random_lits()), rng.randint(1, max_weight))
        for _ in range(m - num_hard)
    ]

    # keep num_vars == max observed index so files round-trip exactly
    used = {abs(lit) for cl in hard + soft for lit in cl.literals}
    missing = sorted(set(range(1, n + 1)) - used)
    for v in missing:
        idx = rng.randrange(len(soft))
        old = soft[idx]
        others = [l for l in old.literals if abs(l) != v][: k - 1]
        lits = tuple(others) + ((v if rng.random() < 0.5 else -v),)
        soft[idx] = Clause(lits, old.weight)

    return WcnfInstance(n, tuple(hard), tuple(soft), name=f"random-wpms-n{n}-m{m}-s{seed}")


def staircase(n: int, seed: int = 0) -> WcnfInstance:
    """Implication-chain instance whose best-cost descends one stair per step."""
    if n < 2:
        raise ValueError("staircase needs n >= 2")
    hard = tuple(Clause((-(i + 1), i)) for i in range(1, n))
    soft = tuple(Clause((i,), 2) for i in range(1, n + 1)) + tuple(
        Clause((-i,), 1) for i in range(1, n + 1)
    )
    return WcnfInstance(n, hard, soft, name=f"staircase-n{n}-s{seed}")


def generate(kind: str, n: int, m: int | None = None, seed: int = 0) -> WcnfInstance:
    if kind == "random-wpms":
        if m is None:
            raise ValueError("random-wpms needs a clause count m")
        return random_wpms(n, m, seed)
    if kind == "staircase":
        return staircase(n, seed)
    raise ValueError(f"unknown instance kind {kind!r}; choose from {KINDS}")
