"""Independent oracles used by the test suite.

Everything here recomputes from first principles (enumeration, linear scans,
full re-evaluation) and never calls the incremental code paths it checks.
"""

from __future__ import annotations

import numpy as np

from anytime_maxsat.wcnf import WcnfInstance


def enumerate_costs(instance: WcnfInstance):
    """Vectorized truth-table sweep: (hard_ok, soft_cost) over all 2^n assignments.

    Assignment index a encodes variable v as bit v-1.
    """
    n = instance.num_vars
    if n > 24:
        raise ValueError("enumeration oracle is for small instances")
    idx = np.arange(2**n, dtype=np.uint32)
    hard_ok = np.ones(2**n, dtype=bool)
    soft_cost = np.zeros(2**n, dtype=np.int64)

    def satisfied(clause):
        sat = np.zeros(2**n, dtype=bool)
        for lit in clause.literals:
            bit = (idx >> (abs(lit) - 1)) & 1
            sat |= bit == 1 if lit > 0 else bit == 0
        return sat

    for cl in instance.hard_clauses:
        hard_ok &= satisfied(cl)
    for cl in instance.soft_clauses:
        soft_cost += np.where(satisfied(cl), 0, cl.weight)
    return hard_ok, soft_cost


def exhaustive_optimum(instance: WcnfInstance):
    """(optimal cost, number of optimal assignments); (None, 0) if infeasible."""
    hard_ok, soft_cost = enumerate_costs(instance)
    if not hard_ok.any():
        return None, 0
    feasible_costs = soft_cost[hard_ok]
    opt = int(feasible_costs.min())
    return opt, int((feasible_costs == opt).sum())


def best_cost_at_linear(events, t, clock="seconds"):
    """Step-function lookup by linear scan over (elapsed, flips, cost) events."""
    best = None
    for ev in events:
        stamp = ev.elapsed if clock == "seconds" else ev.flips
        if stamp <= t:
            best = ev.cost
    return best


def count_hits_linear(targets, found_cost):
    """|{phi in targets : phi >= found_cost}| by linear scan; 0 when not found."""
    if found_cost is None:
        return 0
    return sum(1 for phi in targets if phi >= found_cost)


def shadow_recompute(state):
    """Recompute a SolverState's derived bookkeeping from assign + dyn_w alone.

    Returns (true_count, falsified_hard, falsified_soft, gain_h, gain_s,
    soft_cost, decreasing) computed by full scans.
    """
    comp = state.c
    inst = comp.instance
    assign = state.assign
    dyn = state.dyn_w
    clauses = [(c, True) for c in inst.hard_clauses if c.literals] + [
        (c, False) for c in inst.soft_clauses if c.literals
    ]
    n = inst.num_vars
    true_count = []
    fal_h, fal_s = set(), set()
    gain_h = [0] * (n + 1)
    gain_s = [0] * (n + 1)
    soft_cost = 0
    for ci, (cl, hard) in enumerate(clauses):
        true_lits = [
            lit for lit in cl.literals
            if (assign[lit] == 1 if lit > 0 else assign[-lit] == 0)
        ]
        tc = len(true_lits)
        true_count.append(tc)
        w = int(dyn[ci])
        if tc == 0:
            (fal_h if hard else fal_s).add(ci)
            if not hard:
                soft_cost += cl.weight
            for lit in cl.literals:
                if hard:
                    gain_h[abs(lit)] += w
                else:
                    gain_s[abs(lit)] += w
        elif tc == 1:
            u = abs(true_lits[0])
            if hard:
                gain_h[u] -= w
            else:
                gain_s[u] -= w
    decreasing = {
        v for v in range(1, n + 1)
        if gain_h[v] > 0 or (gain_h[v] == 0 and gain_s[v] > 0)
    }
    return true_count, fal_h, fal_s, gain_h, gain_s, soft_cost, decreasing


def compare_with_shadow(state) -> list[str]:
    """All discrepancies between incremental state and the shadow recompute."""
    true_count, fal_h, fal_s, gain_h, gain_s, soft_cost, decreasing = (
        shadow_recompute(state)
    )
    import anytime_maxsat._core as _core

    problems = []
    inc_tc = state.true_count.tolist()
    if inc_tc != true_count:
        problems.append("true_count mismatch")
    if state.falsified_hard() != fal_h:
        problems.append("falsified hard set mismatch")
    if state.falsified_soft() != fal_s:
        problems.append("falsified soft set mismatch")
    if state.gain_h[: len(gain_h)].tolist() != gain_h:
        problems.append("hard gains mismatch")
    if state.gain_s[: len(gain_s)].tolist() != gain_s:
        problems.append("soft gains mismatch")
    if int(state.S[_core.S_SOFT]) != soft_cost:
        problems.append("soft cost mismatch")
    if state.decreasing_vars() != decreasing:
        problems.append("decreasing set mismatch")
    return problems
