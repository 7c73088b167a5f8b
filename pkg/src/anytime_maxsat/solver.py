"""Configurable clause-weighting stochastic local search for (W)PMS.

One flip per iteration. Variables that strictly reduce the dynamic-weighted
falsified mass (hard before soft, lexicographically) are picked via BMS
sampling; on plateaus the clause weights are updated (probabilistic smoothing
vs increment) and a variable from a random falsified clause is flipped, hard
clauses first. Improving feasible assignments are recorded as a trajectory.

Runs are resumable in chunks of at most 1024 flips; the monotonic clock is
sampled only at chunk boundaries and event creation, never per flip.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import _core
from .wcnf import I64_MAX, U64_MAX, WcnfInstance, cost

CHUNK_FLIPS = 1024


@dataclass(frozen=True)
class SolverConfig:
    """Parameter setting of the solver; the unit of tuning."""

    seed: int = 1
    smooth_prob: float = 0.0003
    hard_weight_inc: int = 1
    soft_weight_cap: int = 100
    bms_size: int = 15
    random_walk_prob: float = 0.15
    restart_flips: int | None = None

    def __post_init__(self) -> None:
        if not 0 <= self.seed <= U64_MAX:
            raise ValueError("seed must fit in 64 bits")
        if not 0.0 <= self.smooth_prob <= 1.0:
            raise ValueError("smooth_prob must be in [0,1]")
        if not 0.0 <= self.random_walk_prob <= 1.0:
            raise ValueError("random_walk_prob must be in [0,1]")
        if self.hard_weight_inc < 1:
            raise ValueError("hard_weight_inc must be >= 1")
        if self.soft_weight_cap < 1:
            raise ValueError("soft_weight_cap must be >= 1")
        if self.bms_size < 1:
            raise ValueError("bms_size must be >= 1")
        if self.restart_flips is not None and self.restart_flips < 1:
            raise ValueError("restart_flips must be >= 1 or None")


@dataclass(frozen=True)
class Budget:
    """Run limit: wall-clock seconds or flip count."""

    mode: str
    limit: float

    def __post_init__(self) -> None:
        if self.mode not in ("wall", "flips"):
            raise ValueError("budget mode must be 'wall' or 'flips'")
        if self.limit <= 0:
            raise ValueError("budget limit must be positive")
        if self.mode == "flips" and int(self.limit) != self.limit:
            raise ValueError("flip budget must be an integer")

    @classmethod
    def wall(cls, seconds: float) -> "Budget":
        return cls("wall", float(seconds))

    @classmethod
    def flips(cls, n: int) -> "Budget":
        return cls("flips", int(n))

    @classmethod
    def parse(cls, text: str) -> "Budget":
        """Parse '300', '300s' (seconds) or '1000000f' (flips)."""
        t = text.strip().lower()
        if t.endswith("f"):
            return cls.flips(int(float(t[:-1])))
        if t.endswith("s"):
            return cls.wall(float(t[:-1]))
        return cls.wall(float(t))


@dataclass(frozen=True)
class TrajectoryEvent:
    """One improvement of the best feasible solution."""

    elapsed: float
    flips: int
    cost: int


@dataclass(frozen=True)
class RunResult:
    trajectory: tuple[TrajectoryEvent, ...]
    best_cost: int | None
    best_assignment: tuple[bool, ...] | None
    total_flips: int
    total_elapsed: float
    event_assignments: tuple[tuple[bool, ...], ...] = ()


class CompiledInstance:
    """Array form of an instance shared read-only by any number of runs."""

    def __init__(self, instance: WcnfInstance):
        if instance.total_soft_weight > I64_MAX:
            raise ValueError("total soft weight exceeds the solver's 63-bit range")
        self.instance = instance
        clauses = [c for c in instance.hard_clauses if c.literals] + [
            c for c in instance.soft_clauses if c.literals
        ]
        self.const_soft = sum(
            c.weight for c in instance.soft_clauses if not c.literals
        )
        n = instance.num_vars
        m = len(clauses)
        self.n = n
        self.m = m
        off = np.zeros(m + 1, dtype=np.int64)
        for i, c in enumerate(clauses):
            off[i + 1] = off[i] + len(c.literals)
        lits = np.zeros(off[m], dtype=np.int32)
        hard = np.zeros(m, dtype=np.uint8)
        sw = np.zeros(m, dtype=np.int64)
        for i, c in enumerate(clauses):
            lits[off[i] : off[i + 1]] = c.literals
            hard[i] = 1 if c.hard else 0
            sw[i] = 0 if c.hard else c.weight
        occ_count = np.zeros(n + 2, dtype=np.int64)
        for lit in lits:
            occ_count[abs(lit) + 1] += 1
        occ_off = np.cumsum(occ_count)
        occ_cl = np.zeros(off[m], dtype=np.int32)
        occ_sign = np.zeros(off[m], dtype=np.int8)
        cursor = occ_off[:-1].copy()
        for i in range(m):
            for j in range(off[i], off[i + 1]):
                v = abs(int(lits[j]))
                k = cursor[v]
                occ_cl[k] = i
                occ_sign[k] = 1 if lits[j] > 0 else -1
                cursor[v] = k + 1
        self.cl_off = off
        self.cl_lits = lits
        self.cl_hard = hard
        self.cl_sw = sw
        # occ_off indexed by var: occurrences of v sit at occ_off[v]..occ_off[v+1]
        self.occ_off = occ_off
        self.occ_cl = occ_cl
        self.occ_sign = occ_sign


class SolverState:
    """Mutable run state; exposes the incremental bookkeeping for inspection."""

    def __init__(self, compiled: CompiledInstance, config: SolverConfig):
        self.c = compiled
        self.config = config
        n, m = compiled.n, compiled.m
        self.assign = np.zeros(n + 1, dtype=np.uint8)
        self.true_count = np.zeros(m, dtype=np.int32)
        self.crit_var = np.zeros(m, dtype=np.int32)
        self.dyn_w = np.ones(m, dtype=np.int64)
        self.gain_h = np.zeros(n + 1, dtype=np.int64)
        self.gain_s = np.zeros(n + 1, dtype=np.int64)
        self.dec_list = np.zeros(max(n, 1), dtype=np.int32)
        self.dec_pos = np.full(n + 1, -1, dtype=np.int32)
        self.falh_list = np.zeros(max(m, 1), dtype=np.int32)
        self.falh_pos = np.full(max(m, 1), -1, dtype=np.int32)
        self.fals_list = np.zeros(max(m, 1), dtype=np.int32)
        self.fals_pos = np.full(max(m, 1), -1, dtype=np.int32)
        self.last_flip = np.zeros(n + 1, dtype=np.int64)
        self.best_assign = np.zeros(n + 1, dtype=np.uint8)
        self.touched = np.zeros(n + 2, dtype=np.int32)
        self.touched_flag = np.zeros(n + 1, dtype=np.uint8)
        self.S = np.zeros(_core.N_SCALARS, dtype=np.int64)
        self.S[_core.S_BEST] = _core.I64_MAX
        self.R = np.zeros(1, dtype=np.uint64)
        _core.seed_rng(self.R, config.seed)
        _core.randomize_assignment(self.assign, n, self.R)
        self._rebuild()

    def _rebuild(self) -> None:
        c = self.c
        _core.rebuild_state(
            c.n, c.cl_off, c.cl_lits, c.cl_hard, c.cl_sw, self.assign,
            self.true_count, self.crit_var, self.dyn_w, self.gain_h, self.gain_s,
            self.dec_list, self.dec_pos, self.falh_list, self.falh_pos,
            self.fals_list, self.fals_pos, self.S,
        )

    @property
    def flips(self) -> int:
        return int(self.S[_core.S_FLIPS])

    @property
    def best_cost(self) -> int | None:
        b = int(self.S[_core.S_BEST])
        return None if b == _core.I64_MAX else b

    def step(self, stop_at_flips: int) -> int:
        """Advance until a new best, the given flip count, or the proven floor."""
        c, cfg = self.c, self.config
        return _core.run_chunk(
            c.n, c.cl_off, c.cl_lits, c.cl_hard, c.cl_sw, c.occ_off, c.occ_cl,
            c.occ_sign, c.const_soft, cfg.smooth_prob, cfg.hard_weight_inc,
            cfg.soft_weight_cap, cfg.bms_size, cfg.random_walk_prob,
            cfg.restart_flips or 0, stop_at_flips, self.assign, self.true_count,
            self.crit_var, self.dyn_w, self.gain_h, self.gain_s, self.dec_list,
            self.dec_pos, self.falh_list, self.falh_pos, self.fals_list,
            self.fals_pos, self.last_flip, self.best_assign, self.touched,
            self.touched_flag, self.S, self.R,
        )

    def falsified_hard(self) -> set[int]:
        return set(self.falh_list[: self.S[_core.S_NFALH]].tolist())

    def falsified_soft(self) -> set[int]:
        return set(self.fals_list[: self.S[_core.S_NFALS]].tolist())

    def decreasing_vars(self) -> set[int]:
        return set(self.dec_list[: self.S[_core.S_NDEC]].tolist())


def _empty_result(elapsed: float) -> RunResult:
    return RunResult((), None, None, 0, elapsed)


def solve(
    instance: WcnfInstance,
    config: SolverConfig,
    budget: Budget,
    keep_event_assignments: bool = False,
) -> RunResult:
    """Run local search until the budget is exhausted; trajectory of new bests."""
    t0 = time.perf_counter()
    if instance.trivially_infeasible:
        return _empty_result(time.perf_counter() - t0)
    state = SolverState(CompiledInstance(instance), config)
    events: list[TrajectoryEvent] = []
    snapshots: list[tuple[bool, ...]] = []
    flip_limit = int(budget.limit) if budget.mode == "flips" else None

    while True:
        target = state.flips + CHUNK_FLIPS
        if flip_limit is not None:
            target = min(target, flip_limit)
        status = state.step(target)
        now = time.perf_counter() - t0
        if status == _core.STATUS_EVENT:
            best = state.best_cost
            assert best is not None
            events.append(TrajectoryEvent(now, state.flips, best))
            if keep_event_assignments:
                snapshots.append(tuple(bool(b) for b in state.best_assign[1:]))
            continue
        if status == _core.STATUS_FLOOR:
            break
        if flip_limit is not None and state.flips >= flip_limit:
            break
        if budget.mode == "wall" and now >= budget.limit:
            break

    best_assignment = (
        tuple(bool(b) for b in state.best_assign[1:]) if events else None
    )
    return RunResult(
        trajectory=tuple(events),
        best_cost=state.best_cost,
        best_assignment=best_assignment,
        total_flips=state.flips,
        total_elapsed=time.perf_counter() - t0,
        event_assignments=tuple(snapshots),
    )


def check_solution(instance: WcnfInstance, result: RunResult) -> bool:
    """Independent verifier: best_assignment must be feasible at best_cost."""
    if result.best_assignment is None:
        return False
    report = cost(instance, result.best_assignment)
    return report.feasible and report.soft_cost == result.best_cost
