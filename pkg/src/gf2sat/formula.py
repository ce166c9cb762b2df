"""CNF data model, DIMACS parsing/serialization and formula evaluation."""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class DimacsError(ValueError):
    """Raised on malformed DIMACS input; carries the offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True, order=True)
class Literal:
    """A variable (1-based index) with a polarity flag."""

    var: int
    negated: bool = False

    def __post_init__(self):
        if self.var < 1:
            raise ValueError(f"variable index must be >= 1, got {self.var}")

    def negate(self) -> Literal:
        return Literal(self.var, not self.negated)

    def to_int(self) -> int:
        return -self.var if self.negated else self.var

    @staticmethod
    def from_int(lit: int) -> Literal:
        if lit == 0:
            raise ValueError("0 is not a literal")
        return Literal(abs(lit), lit < 0)

    def truth(self, value: bool) -> bool:
        """Truth of this literal when its variable has the given value."""
        return value != self.negated

    def __repr__(self):
        return f"{'-' if self.negated else ''}{self.var}"


@dataclass(frozen=True)
class Clause:
    """Disjunction of literals with a stable id assigned at construction."""

    literals: tuple[Literal, ...]
    id: int

    def variables(self) -> tuple[int, ...]:
        return tuple(lit.var for lit in self.literals)

    def to_ints(self) -> tuple[int, ...]:
        return tuple(lit.to_int() for lit in self.literals)

    def __len__(self):
        return len(self.literals)

    def __repr__(self):
        return f"Clause#{self.id}({' '.join(map(str, self.literals))})"


class Assignment(dict):
    """Mapping var -> bool, possibly partial. Plain dict plus small helpers."""

    def is_assigned(self, var: int) -> bool:
        return var in self

    def value(self, var: int):
        """The variable's value, or None when unassigned."""
        return self.get(var)

    def lit_true(self, lit: Literal) -> bool:
        """Truth of lit; raises KeyError if its variable is unassigned."""
        return self[lit.var] != lit.negated

    def copy(self) -> Assignment:
        return Assignment(self)


@dataclass
class BuildStats:
    """What construction filtered out, plus parser warnings."""

    tautologies: int = 0
    duplicate_literals: int = 0
    warnings: list[str] = field(default_factory=list)


@dataclass
class CnfFormula:
    """Clause database with per-variable occurrence counts.

    ``occ[v]`` counts clauses mentioning variable v in either polarity
    (index 0 unused). Clause ids are stable: simplification and
    partitioning preserve them.
    """

    num_vars: int
    clauses: list[Clause]
    occ: list[int]
    stats: BuildStats = field(default_factory=BuildStats)

    @staticmethod
    def from_ints(
        num_vars: int,
        clauses: Iterable[Sequence[int]],
        stats: BuildStats | None = None,
    ) -> CnfFormula:
        """Build from signed-integer clauses, filtering duplicates/tautologies.

        Duplicate literals within a clause are dropped; tautological clauses
        (x and -x) are dropped entirely. Both events are counted in stats.
        Clause ids number the *accepted* clauses from 0.
        """
        stats = stats or BuildStats()
        out: list[Clause] = []
        occ = [0] * (num_vars + 1)
        for raw in clauses:
            seen: dict[int, int] = {}
            lits: list[int] = []
            tautology = False
            for lit in raw:
                var = abs(lit)
                if var < 1 or var > num_vars:
                    raise ValueError(f"literal {lit} out of range 1..{num_vars}")
                prev = seen.get(var)
                if prev is None:
                    seen[var] = lit
                    lits.append(lit)
                elif prev == lit:
                    stats.duplicate_literals += 1
                else:
                    tautology = True
                    break
            if tautology:
                stats.tautologies += 1
                continue
            if not lits:
                raise ValueError("empty clause")
            clause = Clause(tuple(Literal.from_int(x) for x in lits), id=len(out))
            out.append(clause)
            for var in seen:
                occ[var] += 1
        return CnfFormula(num_vars, out, occ, stats)

    def recount_occurrences(self) -> list[int]:
        """Occurrence counts recomputed from scratch (invariant check hook)."""
        occ = [0] * (self.num_vars + 1)
        for clause in self.clauses:
            for var in clause.variables():
                occ[var] += 1
        return occ

    def live_vars(self) -> list[int]:
        """Variables occurring in at least one clause, ascending."""
        return [v for v in range(1, self.num_vars + 1) if self.occ[v] > 0]

    def clause_by_id(self) -> dict[int, Clause]:
        return {c.id: c for c in self.clauses}

    def __len__(self):
        return len(self.clauses)


@dataclass
class EvalReport:
    satisfied: bool
    unsatisfied_ids: list[int]


def evaluate(f: CnfFormula, a: Assignment) -> EvalReport:
    """Check a total assignment against every clause.

    Raises ValueError when a variable occurring in f is unassigned; partial
    states belong to unit_resolution, not here.
    """
    unsat: list[int] = []
    for clause in f.clauses:
        sat = False
        for lit in clause.literals:
            val = a.get(lit.var)
            if val is None:
                raise ValueError(
                    f"assignment is partial: variable {lit.var} unassigned"
                )
            if val != lit.negated:
                sat = True
                break
        if not sat:
            unsat.append(clause.id)
    unsat.sort()
    return EvalReport(not unsat, unsat)


def parse_dimacs(source) -> CnfFormula:
    """Parse DIMACS CNF from a string, bytes, or file-like object.

    Comment lines start with 'c'. A line starting with '%' is treated as an
    end-of-input marker (common trailer in distributed benchmark files).
    Clauses may span lines and end with 0. The header's clause count is
    advisory: mismatches produce a warning in the formula's stats, not an
    error. Out-of-range literals, non-integer tokens, a malformed header and
    an unterminated final clause are errors naming the line.
    """
    if isinstance(source, bytes):
        text = source.decode("ascii", errors="replace")
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("ascii", errors="replace")

    num_vars = -1
    declared_clauses = -1
    raw_clauses: list[list[int]] = []
    current: list[int] = []
    stats = BuildStats()
    last_line = 0

    for line_no, line in enumerate(io.StringIO(text), start=1):
        last_line = line_no
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("%"):
            break
        if stripped.startswith("p"):
            if num_vars >= 0:
                raise DimacsError(line_no, "duplicate header")
            parts = stripped.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(line_no, f"malformed header {stripped!r}")
            try:
                num_vars, declared_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(line_no, f"malformed header {stripped!r}") from None
            if num_vars < 0 or declared_clauses < 0:
                raise DimacsError(line_no, "negative counts in header")
            continue
        if num_vars < 0:
            raise DimacsError(line_no, "clause data before 'p cnf' header")
        for token in stripped.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsError(line_no, f"non-integer token {token!r}") from None
            if lit == 0:
                if not current:
                    raise DimacsError(line_no, "empty clause")
                raw_clauses.append(current)
                current = []
            else:
                if abs(lit) > num_vars:
                    raise DimacsError(
                        line_no,
                        f"literal {lit} exceeds declared {num_vars} vars",
                    )
                current.append(lit)

    if num_vars < 0:
        raise DimacsError(last_line, "missing 'p cnf' header")
    if current:
        raise DimacsError(last_line, "unterminated final clause (missing 0)")
    if declared_clauses != len(raw_clauses):
        stats.warnings.append(
            f"header declares {declared_clauses} clauses, found {len(raw_clauses)}"
        )
    return CnfFormula.from_ints(num_vars, raw_clauses, stats)


def to_dimacs(f: CnfFormula, comments: Sequence[str] = ()) -> str:
    """Serialize back to DIMACS CNF text."""
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {f.num_vars} {len(f.clauses)}")
    for clause in f.clauses:
        lines.append(" ".join(str(x) for x in clause.to_ints()) + " 0")
    return "\n".join(lines) + "\n"
