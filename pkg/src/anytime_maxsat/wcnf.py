"""Weighted partial MaxSAT instances: WCNF parsing, cost evaluation, re-serialization.

Literals use the DIMACS convention: a positive integer v is the variable x_v,
a negative integer -v is its negation. Variables are 1-based.

Two WCNF dialects are accepted:

* new format (MSE 2022+): ``h <lits> 0`` for hard clauses, ``<w> <lits> 0``
  for soft clauses, no header; the variable count is the maximum index seen.
* old format: ``p wcnf <n> <m> <top>`` header, clause lines ``<w> <lits> 0``
  where w >= top marks a hard clause.

Comment lines start with ``c``. Unweighted PMS is the special case of all
soft weights equal to 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

U64_MAX = 2**64 - 1
I64_MAX = 2**63 - 1


class WcnfError(ValueError):
    """Raised for malformed WCNF input or invalid instance construction."""


@dataclass(frozen=True)
class Clause:
    """One clause: deduplicated literals plus a weight (None means hard)."""

    literals: tuple[int, ...]
    weight: int | None = None

    def __post_init__(self) -> None:
        if self.weight is not None and self.weight < 1:
            raise WcnfError(f"clause weight must be >= 1, got {self.weight}")
        seen = set()
        for lit in self.literals:
            if lit == 0:
                raise WcnfError("literal 0 inside a clause body")
            if lit in seen:
                raise WcnfError(f"duplicate literal {lit} in clause")
            if -lit in seen:
                raise WcnfError(f"tautological clause contains {lit} and {-lit}")
            seen.add(lit)

    @property
    def hard(self) -> bool:
        return self.weight is None


@dataclass(frozen=True)
class WcnfInstance:
    """Immutable (W)PMS instance: hard clauses must hold, soft ones cost their weight."""

    num_vars: int
    hard_clauses: tuple[Clause, ...]
    soft_clauses: tuple[Clause, ...]
    name: str = ""
    dropped_tautologies: int = 0

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise WcnfError("num_vars must be >= 0")
        total = 0
        for cl in self.hard_clauses:
            if not cl.hard:
                raise WcnfError("weighted clause in hard_clauses")
            for lit in cl.literals:
                if abs(lit) > self.num_vars:
                    raise WcnfError(f"variable {abs(lit)} exceeds num_vars={self.num_vars}")
        for cl in self.soft_clauses:
            if cl.hard:
                raise WcnfError("hard clause in soft_clauses")
            total += cl.weight
            for lit in cl.literals:
                if abs(lit) > self.num_vars:
                    raise WcnfError(f"variable {abs(lit)} exceeds num_vars={self.num_vars}")
        if total > U64_MAX:
            raise WcnfError("sum of soft weights exceeds 64-bit unsigned range")

    @property
    def num_clauses(self) -> int:
        return len(self.hard_clauses) + len(self.soft_clauses)

    @property
    def total_soft_weight(self) -> int:
        return sum(cl.weight for cl in self.soft_clauses)

    @property
    def trivially_infeasible(self) -> bool:
        """True when an empty hard clause makes every assignment infeasible."""
        return any(not cl.literals for cl in self.hard_clauses)


@dataclass(frozen=True)
class CostReport:
    """Evaluation of one assignment: falsified-hard count and falsified-soft weight."""

    hard_violations: int
    soft_cost: int

    @property
    def feasible(self) -> bool:
        return self.hard_violations == 0


def _normalize_literals(lits: list[int]) -> tuple[int, ...] | None:
    """Deduplicate literals, preserving first occurrence; None for tautologies."""
    out: list[int] = []
    seen: set[int] = set()
    for lit in lits:
        if -lit in seen:
            return None
        if lit not in seen:
            seen.add(lit)
            out.append(lit)
    return tuple(out)


def _parse_clause_body(tokens: list[str], lineno: int) -> list[int]:
    """Parse literal tokens of one clause line; enforces the trailing 0."""
    if not tokens or tokens[-1] != "0":
        raise WcnfError(f"line {lineno}: missing terminating 0")
    lits: list[int] = []
    for tok in tokens[:-1]:
        try:
            lit = int(tok)
        except ValueError:
            raise WcnfError(f"line {lineno}: bad literal {tok!r}") from None
        if lit == 0:
            raise WcnfError(f"line {lineno}: literal 0 inside a clause body")
        lits.append(lit)
    return lits


def parse_wcnf(text: str, name: str = "") -> WcnfInstance:
    """Parse a complete WCNF file body (either dialect) into a WcnfInstance."""
    hard: list[Clause] = []
    soft: list[Clause] = []
    dropped = 0
    top: int | None = None
    declared_n: int | None = None
    max_var = 0
    soft_sum = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if hard or soft or top is not None:
                raise WcnfError(f"line {lineno}: unexpected header after clauses")
            if len(tokens) != 5 or tokens[1] != "wcnf":
                raise WcnfError(f"line {lineno}: malformed header {line!r}")
            try:
                declared_n = int(tokens[2])
                declared_m = int(tokens[3])
                top = int(tokens[4])
            except ValueError:
                raise WcnfError(f"line {lineno}: malformed header {line!r}") from None
            if declared_n < 0 or declared_m < 0 or top < 1:
                raise WcnfError(f"line {lineno}: malformed header {line!r}")
            continue

        if tokens[0] == "h":
            if top is not None:
                raise WcnfError(f"line {lineno}: 'h' clause in old-format file")
            weight: int | None = None
            lits = _parse_clause_body(tokens[1:], lineno)
        else:
            try:
                w = int(tokens[0])
            except ValueError:
                raise WcnfError(f"line {lineno}: bad weight {tokens[0]!r}") from None
            if w <= 0:
                raise WcnfError(f"line {lineno}: weight must be positive, got {w}")
            lits = _parse_clause_body(tokens[1:], lineno)
            weight = None if (top is not None and w >= top) else w

        for lit in lits:
            v = abs(lit)
            if declared_n is not None and v > declared_n:
                raise WcnfError(f"line {lineno}: variable {v} exceeds declared n={declared_n}")
            max_var = max(max_var, v)

        norm = _normalize_literals(lits)
        if norm is None:
            dropped += 1
            continue
        if weight is None:
            hard.append(Clause(norm))
        else:
            soft_sum += weight
            if soft_sum > U64_MAX:
                raise WcnfError("sum of soft weights exceeds 64-bit unsigned range")
            soft.append(Clause(norm, weight))

    num_vars = declared_n if declared_n is not None else max_var
    return WcnfInstance(
        num_vars=num_vars,
        hard_clauses=tuple(hard),
        soft_clauses=tuple(soft),
        name=name,
        dropped_tautologies=dropped,
    )


def parse_wcnf_file(path) -> WcnfInstance:
    from pathlib import Path

    p = Path(path)
    return parse_wcnf(p.read_text(encoding="utf-8"), name=p.stem)


def dump(instance: WcnfInstance) -> str:
    """Re-serialize in the new format: hard lines first, then soft."""
    lines = []
    for cl in instance.hard_clauses:
        lines.append("h " + " ".join(str(l) for l in cl.literals + (0,)))
    for cl in instance.soft_clauses:
        lines.append(f"{cl.weight} " + " ".join(str(l) for l in cl.literals + (0,)))
    return "\n".join(lines) + ("\n" if lines else "")


def _clause_satisfied(cl: Clause, values) -> bool:
    for lit in cl.literals:
        if (values[lit - 1] if lit > 0 else not values[-lit - 1]):
            return True
    return False


def cost(instance: WcnfInstance, assignment) -> CostReport:
    """Evaluate an assignment by full scan of every clause.

    ``assignment`` is a sequence of booleans of length num_vars; index i holds
    the value of variable i+1.
    """
    if len(assignment) != instance.num_vars:
        raise WcnfError(
            f"assignment length {len(assignment)} != num_vars {instance.num_vars}"
        )
    hard_violations = sum(
        1 for cl in instance.hard_clauses if not _clause_satisfied(cl, assignment)
    )
    soft_cost = sum(
        cl.weight for cl in instance.soft_clauses if not _clause_satisfied(cl, assignment)
    )
    return CostReport(hard_violations=hard_violations, soft_cost=soft_cost)
