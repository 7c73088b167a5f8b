"""Jitted kernels for the clause-weighting local-search loop.

State lives in numpy arrays owned by the Python driver; every kernel mutates
them in place so a run can be paused at any flip boundary and resumed without
behavioural difference (chunk boundaries never touch the RNG stream).

The flip and weight-update bookkeeping is hand-inlined inside run_chunk:
helper-function indirection and memory-resident loop counters measurably
dominated the per-flip cost at this problem scale.

Scalar slots of the ``S`` array:
  0 flips done, 1 flips since last new best, 2 best cost (I64_MAX = none),
  3 current falsified-soft static weight, 4/5 falsified hard/soft counts,
  6 size of the decreasing-variable set.
"""

from __future__ import annotations

import numpy as np
from numba import njit

S_FLIPS = 0
S_SINCE = 1
S_BEST = 2
S_SOFT = 3
S_NFALH = 4
S_NFALS = 5
S_NDEC = 6
N_SCALARS = 7

I64_MAX = np.iinfo(np.int64).max

STATUS_CHUNK = 0
STATUS_EVENT = 1
STATUS_FLOOR = 2

_INV_2_53 = 1.0 / 9007199254740992.0


@njit(cache=True, nogil=True, inline="always")
def _rng_u64(R):
    s = np.uint64(R[0])
    s ^= s >> np.uint64(12)
    s ^= np.uint64(s << np.uint64(25))
    s ^= s >> np.uint64(27)
    R[0] = s
    return np.uint64(s * np.uint64(2685821657736338717))


@njit(cache=True, nogil=True, inline="always")
def _rng_u01(R):
    return np.float64(_rng_u64(R) >> np.uint64(11)) * _INV_2_53


@njit(cache=True, nogil=True, inline="always")
def _rng_below(R, k):
    # Lemire multiply-shift on the high 32 bits; k is far below 2^32 here
    return np.int64((np.uint64(_rng_u64(R) >> np.uint64(32)) * np.uint64(k)) >> np.uint64(32))


@njit(cache=True, nogil=True)
def seed_rng(R, seed):
    z = np.uint64(seed) + np.uint64(0x9E3779B97F4A7C15)
    z = np.uint64((z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9))
    z = np.uint64((z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB))
    z = z ^ (z >> np.uint64(31))
    if z == np.uint64(0):
        z = np.uint64(0x9E3779B97F4A7C15)
    R[0] = z


@njit(cache=True, nogil=True, inline="always")
def _is_true(assign, lit):
    if lit > 0:
        return assign[lit] == 1
    return assign[-lit] == 0


@njit(cache=True, nogil=True, inline="always")
def _update_dec(v, gain_h, gain_s, dec_list, dec_pos, S):
    should = gain_h[v] > 0 or (gain_h[v] == 0 and gain_s[v] > 0)
    pos = dec_pos[v]
    if should and pos < 0:
        dec_pos[v] = S[S_NDEC]
        dec_list[S[S_NDEC]] = v
        S[S_NDEC] += 1
    elif not should and pos >= 0:
        last = S[S_NDEC] - 1
        moved = dec_list[last]
        dec_list[pos] = moved
        dec_pos[moved] = pos
        dec_pos[v] = -1
        S[S_NDEC] = last


@njit(cache=True, nogil=True)
def randomize_assignment(assign, n, R):
    for v in range(1, n + 1):
        assign[v] = np.uint8(_rng_u64(R) >> np.uint64(63))


@njit(cache=True, nogil=True)
def rebuild_state(
    n,
    cl_off,
    cl_lits,
    cl_hard,
    cl_sw,
    assign,
    true_count,
    crit_var,
    dyn_w,
    gain_h,
    gain_s,
    dec_list,
    dec_pos,
    falh_list,
    falh_pos,
    fals_list,
    fals_pos,
    S,
):
    """Recompute all derived state from assign + dyn_w (weights are kept)."""
    m = len(cl_hard)
    for v in range(n + 1):
        gain_h[v] = 0
        gain_s[v] = 0
        dec_pos[v] = -1
    S[S_SOFT] = 0
    S[S_NFALH] = 0
    S[S_NFALS] = 0
    S[S_NDEC] = 0
    for c in range(m):
        tc = 0
        crit = 0
        for i in range(cl_off[c], cl_off[c + 1]):
            lit = cl_lits[i]
            if _is_true(assign, lit):
                tc += 1
                crit = abs(lit)
        true_count[c] = tc
        falh_pos[c] = -1
        fals_pos[c] = -1
        w = dyn_w[c]
        if tc == 0:
            crit_var[c] = 0
            if cl_hard[c] == 1:
                falh_pos[c] = S[S_NFALH]
                falh_list[S[S_NFALH]] = c
                S[S_NFALH] += 1
            else:
                fals_pos[c] = S[S_NFALS]
                fals_list[S[S_NFALS]] = c
                S[S_NFALS] += 1
                S[S_SOFT] += cl_sw[c]
            for i in range(cl_off[c], cl_off[c + 1]):
                x = abs(cl_lits[i])
                if cl_hard[c] == 1:
                    gain_h[x] += w
                else:
                    gain_s[x] += w
        elif tc == 1:
            crit_var[c] = crit
            if cl_hard[c] == 1:
                gain_h[crit] -= w
            else:
                gain_s[crit] -= w
        else:
            crit_var[c] = 0
    for v in range(1, n + 1):
        _update_dec(v, gain_h, gain_s, dec_list, dec_pos, S)


@njit(cache=True, nogil=True, inline="always")
def _better(a, b, gain_h, gain_s, last_flip):
    if gain_h[a] != gain_h[b]:
        return gain_h[a] > gain_h[b]
    if gain_s[a] != gain_s[b]:
        return gain_s[a] > gain_s[b]
    if last_flip[a] != last_flip[b]:
        return last_flip[a] < last_flip[b]
    return a < b


@njit(cache=True, nogil=True)
def run_chunk(
    n,
    cl_off,
    cl_lits,
    cl_hard,
    cl_sw,
    occ_off,
    occ_cl,
    occ_sign,
    const_soft,
    sp,
    hard_inc,
    soft_cap,
    bms_size,
    walk_prob,
    restart_flips,
    stop_at_flips,
    assign,
    true_count,
    crit_var,
    dyn_w,
    gain_h,
    gain_s,
    dec_list,
    dec_pos,
    falh_list,
    falh_pos,
    fals_list,
    fals_pos,
    last_flip,
    best_assign,
    touched,
    touched_flag,
    S,
    R,
):
    while True:
        # record an improved feasible best, pausing so the driver can stamp it
        if S[S_NFALH] == 0:
            cur = S[S_SOFT] + const_soft
            if cur < S[S_BEST]:
                S[S_BEST] = cur
                S[S_SINCE] = 0
                for v in range(n + 1):
                    best_assign[v] = assign[v]
                return STATUS_EVENT
        if S[S_BEST] <= const_soft:
            return STATUS_FLOOR
        if S[S_FLIPS] >= stop_at_flips:
            return STATUS_CHUNK
        if restart_flips > 0 and S[S_SINCE] >= restart_flips:
            randomize_assignment(assign, n, R)
            rebuild_state(
                n, cl_off, cl_lits, cl_hard, cl_sw, assign, true_count, crit_var,
                dyn_w, gain_h, gain_s, dec_list, dec_pos, falh_list, falh_pos,
                fals_list, fals_pos, S,
            )
            S[S_SINCE] = 0
            continue

        # ---- select the variable to flip ----
        if S[S_NDEC] > 0:
            # BMS: bms_size samples with replacement from the decreasing set
            # (a singleton set needs no draws: every sample is that variable)
            if S[S_NDEC] == 1:
                v = dec_list[0]
            else:
                v = dec_list[_rng_below(R, S[S_NDEC])]
                for _ in range(bms_size - 1):
                    cand = dec_list[_rng_below(R, S[S_NDEC])]
                    if _better(cand, v, gain_h, gain_s, last_flip):
                        v = cand
        else:
            # plateau: update clause weights, then walk within a falsified clause
            ntouched = 1
            if _rng_u01(R) < sp:
                # smoothing: satisfied soft clauses drift back toward weight 1
                m = len(cl_hard)
                for c in range(m):
                    if cl_hard[c] == 0 and true_count[c] >= 1 and dyn_w[c] > 1:
                        dyn_w[c] -= 1
                        if true_count[c] == 1:
                            u = crit_var[c]
                            gain_s[u] += 1
                            if touched_flag[u] == 0:
                                touched_flag[u] = 1
                                touched[ntouched] = u
                                ntouched += 1
            else:
                for k in range(S[S_NFALH]):
                    c = falh_list[k]
                    dyn_w[c] += hard_inc
                    for i in range(cl_off[c], cl_off[c + 1]):
                        x = abs(cl_lits[i])
                        gain_h[x] += hard_inc
                        if touched_flag[x] == 0:
                            touched_flag[x] = 1
                            touched[ntouched] = x
                            ntouched += 1
                for k in range(S[S_NFALS]):
                    c = fals_list[k]
                    if dyn_w[c] < soft_cap:
                        dyn_w[c] += 1
                        for i in range(cl_off[c], cl_off[c + 1]):
                            x = abs(cl_lits[i])
                            gain_s[x] += 1
                            if touched_flag[x] == 0:
                                touched_flag[x] = 1
                                touched[ntouched] = x
                                ntouched += 1
            for i in range(1, ntouched):
                x = touched[i]
                touched_flag[x] = 0
                _update_dec(x, gain_h, gain_s, dec_list, dec_pos, S)

            if S[S_NFALH] > 0:
                c = falh_list[_rng_below(R, S[S_NFALH])]
            elif S[S_NFALS] > 0:
                c = fals_list[_rng_below(R, S[S_NFALS])]
            else:
                continue
            lo = cl_off[c]
            size = cl_off[c + 1] - lo
            if _rng_u01(R) < walk_prob:
                v = abs(cl_lits[lo + _rng_below(R, size)])
            else:
                v = abs(cl_lits[lo])
                for i in range(lo + 1, lo + size):
                    cand = abs(cl_lits[i])
                    if _better(cand, v, gain_h, gain_s, last_flip):
                        v = cand

        # ---- apply the flip with incremental bookkeeping ----
        S[S_FLIPS] += 1
        S[S_SINCE] += 1
        last_flip[v] = S[S_FLIPS]
        old = assign[v]
        assign[v] = 1 - old
        ntouched = 1
        touched[ntouched] = v
        touched_flag[v] = 1
        ntouched += 1
        for k in range(occ_off[v], occ_off[v + 1]):
            c = occ_cl[k]
            w = dyn_w[c]
            hard = cl_hard[c] == 1
            was_true = (occ_sign[k] > 0) == (old == 1)
            if was_true:
                tc = true_count[c] - 1
                true_count[c] = tc
                if tc == 0:
                    # v held the last true literal: clause joins the falsified set
                    if hard:
                        gain_h[v] += w
                    else:
                        gain_s[v] += w
                    for i in range(cl_off[c], cl_off[c + 1]):
                        x = abs(cl_lits[i])
                        if touched_flag[x] == 0:
                            touched_flag[x] = 1
                            touched[ntouched] = x
                            ntouched += 1
                        if hard:
                            gain_h[x] += w
                        else:
                            gain_s[x] += w
                    crit_var[c] = 0
                    if hard:
                        falh_pos[c] = S[S_NFALH]
                        falh_list[S[S_NFALH]] = c
                        S[S_NFALH] += 1
                    else:
                        fals_pos[c] = S[S_NFALS]
                        fals_list[S[S_NFALS]] = c
                        S[S_NFALS] += 1
                        S[S_SOFT] += cl_sw[c]
                elif tc == 1:
                    u = 0
                    for i in range(cl_off[c], cl_off[c + 1]):
                        lit = cl_lits[i]
                        if _is_true(assign, lit):
                            u = abs(lit)
                            break
                    crit_var[c] = u
                    if touched_flag[u] == 0:
                        touched_flag[u] = 1
                        touched[ntouched] = u
                        ntouched += 1
                    if hard:
                        gain_h[u] -= w
                    else:
                        gain_s[u] -= w
            else:
                tc = true_count[c] + 1
                true_count[c] = tc
                if tc == 1:
                    for i in range(cl_off[c], cl_off[c + 1]):
                        x = abs(cl_lits[i])
                        if touched_flag[x] == 0:
                            touched_flag[x] = 1
                            touched[ntouched] = x
                            ntouched += 1
                        if hard:
                            gain_h[x] -= w
                        else:
                            gain_s[x] -= w
                    if hard:
                        gain_h[v] -= w
                    else:
                        gain_s[v] -= w
                    crit_var[c] = v
                    if hard:
                        p = falh_pos[c]
                        last = S[S_NFALH] - 1
                        moved = falh_list[last]
                        falh_list[p] = moved
                        falh_pos[moved] = p
                        falh_pos[c] = -1
                        S[S_NFALH] = last
                    else:
                        p = fals_pos[c]
                        last = S[S_NFALS] - 1
                        moved = fals_list[last]
                        fals_list[p] = moved
                        fals_pos[moved] = p
                        fals_pos[c] = -1
                        S[S_NFALS] = last
                        S[S_SOFT] -= cl_sw[c]
                elif tc == 2:
                    u = crit_var[c]
                    if touched_flag[u] == 0:
                        touched_flag[u] = 1
                        touched[ntouched] = u
                        ntouched += 1
                    if hard:
                        gain_h[u] += w
                    else:
                        gain_s[u] += w
                    crit_var[c] = 0
        # refresh decreasing-set membership of exactly the variables whose gain moved
        for i in range(1, ntouched):
            x = touched[i]
            touched_flag[x] = 0
            _update_dec(x, gain_h, gain_s, dec_list, dec_pos, S)
