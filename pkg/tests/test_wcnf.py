import random

import pytest

from anytime_maxsat.wcnf import (
    Clause,
    CostReport,
    WcnfError,
    WcnfInstance,
    cost,
    dump,
    parse_wcnf,
)


def test_parse_new_format():
    inst = parse_wcnf("h 1 -2 0\n3 2 0\n")
    assert inst.num_vars == 2
    assert inst.hard_clauses == (Clause((1, -2)),)
    assert inst.soft_clauses == (Clause((2,), 3),)


def test_old_format_equivalent_to_new():
    new = parse_wcnf("h 1 -2 0\n3 2 0\n")
    old = parse_wcnf("p wcnf 2 2 100\n100 1 -2 0\n3 2 0\n")
    assert (old.num_vars, old.hard_clauses, old.soft_clauses) == (
        new.num_vars,
        new.hard_clauses,
        new.soft_clauses,
    )


def test_comment_only_with_header():
    inst = parse_wcnf("c comment only\np wcnf 1 0 10\n")
    assert inst.num_vars == 1
    assert inst.num_clauses == 0


def test_weight_above_top_is_hard():
    inst = parse_wcnf("p wcnf 1 1 10\n11 1 0\n")
    assert len(inst.hard_clauses) == 1 and not inst.soft_clauses


@pytest.mark.parametrize(
    "body",
    [
        "p wcnf 2 1\n1 1 0\n",  # header missing top
        "p cnf 2 1 5\n1 1 0\n",  # not wcnf
        "p wcnf x 1 5\n",  # non-integer field
        "0 1 0\n",  # weight <= 0 (new format)
        "p wcnf 2 1 5\n-3 1 0\n",  # negative weight
        "1 1 0 2 0\n",  # literal 0 inside body
        "h 1 -2\n",  # missing terminating 0
        "p wcnf 2 1 5\n1 3 0\n",  # var exceeds declared n
        "p wcnf 2 1 5\nh 1 0\n",  # 'h' line in old format
    ],
)
def test_parse_errors(body):
    with pytest.raises(WcnfError):
        parse_wcnf(body)


def test_soft_weight_sum_overflow_rejected():
    big = 2**63
    body = f"{big} 1 0\n{big} 2 0\n"
    with pytest.raises(WcnfError):
        parse_wcnf(body)


def test_duplicate_literals_deduplicated():
    inst = parse_wcnf("2 1 1 -2 0\n")
    assert inst.soft_clauses == (Clause((1, -2), 2),)


def test_tautology_dropped_with_counter():
    inst = parse_wcnf("h 1 -1 0\n2 2 0\n")
    assert not inst.hard_clauses
    assert inst.dropped_tautologies == 1
    assert len(inst.soft_clauses) == 1


def test_empty_hard_clause_flags_infeasible():
    inst = parse_wcnf("h 0\n1 1 0\n")
    assert inst.trivially_infeasible


def test_empty_soft_clause_is_constant_cost():
    inst = parse_wcnf("5 0\n1 1 0\n")
    assert not inst.trivially_infeasible
    report = cost(inst, [True])
    assert report.soft_cost == 5 and report.feasible


def test_cost_empty_instance():
    inst = WcnfInstance(num_vars=3, hard_clauses=(), soft_clauses=())
    assert cost(inst, [True, False, True]) == CostReport(0, 0)


def test_cost_examples():
    inst = parse_wcnf("h 1 -2 0\n3 2 0\n")
    infeasible = cost(inst, [False, True])
    assert infeasible.hard_violations == 1
    assert infeasible.soft_cost == 0
    assert not infeasible.feasible
    feasible = cost(inst, [True, True])
    assert feasible == CostReport(0, 0)
    assert feasible.feasible


def test_cost_length_mismatch():
    inst = parse_wcnf("h 1 0\n")
    with pytest.raises(WcnfError):
        cost(inst, [True, False])


def _random_instance(rng: random.Random, n: int) -> WcnfInstance:
    # every variable occurs, so num_vars survives a dump round-trip
    hard, soft = [], []
    variables = list(range(1, n + 1))
    rng.shuffle(variables)
    for i in range(0, n, 3):
        chunk = variables[i : i + 3]
        lits = tuple(v if rng.random() < 0.5 else -v for v in chunk)
        if rng.random() < 0.5:
            hard.append(Clause(lits))
        else:
            soft.append(Clause(lits, rng.randint(1, 9)))
    for _ in range(rng.randint(0, 6)):
        k = rng.randint(1, min(3, n))
        chosen = rng.sample(range(1, n + 1), k)
        lits = tuple(v if rng.random() < 0.5 else -v for v in chosen)
        soft.append(Clause(lits, rng.randint(1, 9)))
    return WcnfInstance(n, tuple(hard), tuple(soft))


def test_dump_round_trip():
    rng = random.Random(20240601)
    for _ in range(50):
        inst = _random_instance(rng, rng.randint(3, 12))
        again = parse_wcnf(dump(inst))
        assert again.num_vars == inst.num_vars
        assert again.hard_clauses == inst.hard_clauses
        assert again.soft_clauses == inst.soft_clauses


def test_cost_pure():
    rng = random.Random(7)
    for _ in range(20):
        inst = _random_instance(rng, 8)
        alpha = [rng.random() < 0.5 for _ in range(8)]
        assert cost(inst, alpha) == cost(inst, alpha)


def test_flip_of_unused_variable_is_neutral():
    rng = random.Random(99)
    for _ in range(20):
        inst = _random_instance(rng, 6)
        padded = WcnfInstance(7, inst.hard_clauses, inst.soft_clauses)
        alpha = [rng.random() < 0.5 for _ in range(7)]
        before = cost(padded, alpha)
        alpha[6] = not alpha[6]
        assert cost(padded, alpha) == before
