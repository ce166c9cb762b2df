"""Recovery of parity equations from 4-clause CNF patterns.

A ternary equation A^B^C=1 appears in CNF as the four 3-literal clauses over
{A,B,C} carrying an even number of negations; the four odd-negation clauses
encode A^B^C=0. Recovered ternaries are grown into longer equations by
merging on a single shared variable, and the formula is split into the
structured part S (clauses touching frequently used variables) and the
residual handed to local search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .formula import CnfFormula


@dataclass(frozen=True)
class XorEquation:
    """Normalized parity constraint: XOR of vars equals rhs; no negations."""

    vars: frozenset[int]
    rhs: int

    def __post_init__(self):
        if self.rhs not in (0, 1):
            raise ValueError("rhs must be 0 or 1")

    def sorted_vars(self) -> tuple[int, ...]:
        return tuple(sorted(self.vars))

    def holds(self, values: dict[int, bool]) -> bool:
        acc = 0
        for v in self.vars:
            acc ^= int(values[v])
        return acc == self.rhs

    def __repr__(self):
        return f"({'^'.join(map(str, self.sorted_vars())) or '0'}={self.rhs})"


EMPTY_EQUATION = XorEquation(frozenset(), 0)


def merge(e1: XorEquation, e2: XorEquation) -> XorEquation:
    """XOR both sides: symmetric difference of variables, XOR of constants."""
    return XorEquation(e1.vars.symmetric_difference(e2.vars), e1.rhs ^ e2.rhs)


@dataclass(frozen=True)
class TernaryXor:
    """A 3-variable equation together with the 4 clause ids it replaces."""

    equation: XorEquation
    source_clause_ids: tuple[int, int, int, int]

    def triple(self) -> tuple[int, int, int]:
        a, b, c = self.equation.sorted_vars()
        return a, b, c


# Sign patterns (negated flags in var-sorted order) completing each parity.
_EVEN_PATTERNS = frozenset(
    p for p in ((a, b, c) for a in (False, True) for b in (False, True)
                for c in (False, True))
    if (p[0] + p[1] + p[2]) % 2 == 0
)
_ODD_PATTERNS = frozenset(
    p for p in ((a, b, c) for a in (False, True) for b in (False, True)
                for c in (False, True))
    if (p[0] + p[1] + p[2]) % 2 == 1
)


def scan_ternary_patterns(
    f: CnfFormula,
) -> tuple[list[TernaryXor], list[tuple[int, int, int]]]:
    """Find complete parity quadruples among the 3-variable clauses.

    Returns (ternaries sorted by variable triple, contradictory triples).
    A triple completing both the even and the odd quadruple is contradictory:
    it is reported, and nothing is extracted for it. Each clause id feeds at
    most one TernaryXor; surplus duplicate clauses stay in the formula.
    """
    groups: dict[tuple[int, int, int], dict[tuple[bool, bool, bool], int]] = {}
    for clause in f.clauses:
        if len(clause.literals) != 3:
            continue
        lits = sorted(clause.literals, key=lambda l: l.var)
        triple = (lits[0].var, lits[1].var, lits[2].var)
        pattern = (lits[0].negated, lits[1].negated, lits[2].negated)
        groups.setdefault(triple, {}).setdefault(pattern, clause.id)

    ternaries: list[TernaryXor] = []
    contradictions: list[tuple[int, int, int]] = []
    for triple in sorted(groups):
        present = groups[triple]
        has_even = _EVEN_PATTERNS <= present.keys()
        has_odd = _ODD_PATTERNS <= present.keys()
        if has_even and has_odd:
            contradictions.append(triple)
            continue
        if has_even or has_odd:
            patterns = _EVEN_PATTERNS if has_even else _ODD_PATTERNS
            ids = tuple(sorted(present[p] for p in patterns))
            equation = XorEquation(frozenset(triple), 1 if has_even else 0)
            ternaries.append(TernaryXor(equation, ids))
    return ternaries, contradictions


def find_ternary_xors(f: CnfFormula) -> list[TernaryXor]:
    """Ternary equations recoverable from f, in deterministic triple order."""
    return scan_ternary_patterns(f)[0]


def compute_theta(f: CnfFormula, multiplier: int = 3, offset: int = 2) -> int:
    """Occurrence threshold: multiplier * ceil(#clause/#var) + offset.

    #var counts variables that actually occur. An empty formula gets an
    unreachable threshold, making the frequent set empty.
    """
    nvars = sum(1 for v in range(1, f.num_vars + 1) if f.occ[v] > 0)
    if nvars == 0 or not f.clauses:
        return len(f.clauses) + offset
    return multiplier * math.ceil(len(f.clauses) / nvars) + offset


def frequent_vars(f: CnfFormula, theta: int) -> set[int]:
    """Variables whose occurrence count strictly exceeds theta."""
    return {v for v in range(1, f.num_vars + 1) if f.occ[v] > theta}


@dataclass
class Chain:
    """A merged equation plus the log needed to undo the merging.

    ``eliminated`` records, in merge order, each cancelled shared variable
    with the ternary equation it cancelled from. Replaying it in reverse
    assigns every cancelled variable so that all consumed ternaries hold.
    """

    equation: XorEquation
    members: list[TernaryXor] = field(default_factory=list)
    eliminated: list[tuple[int, XorEquation]] = field(default_factory=list)


def grow_chains(ternaries: list[TernaryXor], frequent: set[int]) -> list[Chain]:
    """Greedily merge ternaries into the longest possible equations.

    A new chain starts from the first unconsumed ternary with at least two
    frequently used variables (first unconsumed overall when none qualifies)
    and repeatedly absorbs the first unconsumed ternary sharing exactly one
    variable with it. Every ternary ends up in exactly one chain; ternaries
    absorbing nothing become singleton chains.
    """
    consumed = [False] * len(ternaries)
    chains: list[Chain] = []
    remaining = len(ternaries)

    def pick_seed() -> int:
        fallback = -1
        for i, t in enumerate(ternaries):
            if consumed[i]:
                continue
            if fallback < 0:
                fallback = i
            if len(t.equation.vars & frequent) >= 2:
                return i
        return fallback

    while remaining:
        seed = pick_seed()
        consumed[seed] = True
        remaining -= 1
        chain = Chain(ternaries[seed].equation, [ternaries[seed]])
        while True:
            extended = False
            for i, t in enumerate(ternaries):
                if consumed[i]:
                    continue
                shared = chain.equation.vars & t.equation.vars
                if len(shared) == 1:
                    consumed[i] = True
                    remaining -= 1
                    chain.equation = merge(chain.equation, t.equation)
                    chain.members.append(t)
                    chain.eliminated.append((next(iter(shared)), t.equation))
                    extended = True
                    break
            if not extended:
                break
        chains.append(chain)
    return chains


def partition(
    f: CnfFormula, frequent: set[int]
) -> tuple[list[int], CnfFormula]:
    """Split f into S (clause ids touching a frequent variable) and the rest.

    The residual keeps clause order and ids; together with S it covers every
    clause of f exactly once.
    """
    structured: list[int] = []
    residual_clauses = []
    for clause in f.clauses:
        if any(v in frequent for v in clause.variables()):
            structured.append(clause.id)
        else:
            residual_clauses.append(clause)
    occ = [0] * (f.num_vars + 1)
    for clause in residual_clauses:
        for v in clause.variables():
            occ[v] += 1
    residual = CnfFormula(f.num_vars, residual_clauses, occ)
    return structured, residual


@dataclass
class ExtractionResult:
    """Everything the structured/random split produces."""

    equations: list[XorEquation]
    frequent_vars: set[int]
    structured_clause_ids: list[int]
    residual: CnfFormula
    consumed_ternaries: int
    chains: list[Chain]
    contradictory_triples: list[tuple[int, int, int]]
    removed_clause_ids: set[int]
    theta: int


def extract(f: CnfFormula, theta: int) -> ExtractionResult:
    """Full structured-part recovery on an already-simplified formula.

    Consumed pattern clauses are removed (their content lives on in the
    equations and the chains' elimination logs); remaining clauses are then
    partitioned against the frequent-variable set.
    """
    frequent = frequent_vars(f, theta)
    ternaries, contradictions = scan_ternary_patterns(f)
    chains = grow_chains(ternaries, frequent)

    removed: set[int] = set()
    for t in ternaries:
        removed.update(t.source_clause_ids)
    kept = [c for c in f.clauses if c.id not in removed]
    occ = [0] * (f.num_vars + 1)
    for clause in kept:
        for v in clause.variables():
            occ[v] += 1
    stripped = CnfFormula(f.num_vars, kept, occ)

    structured, residual = partition(stripped, frequent)
    return ExtractionResult(
        equations=[c.equation for c in chains],
        frequent_vars=frequent,
        structured_clause_ids=structured,
        residual=residual,
        consumed_ternaries=len(ternaries),
        chains=chains,
        contradictory_triples=contradictions,
        removed_clause_ids=removed,
        theta=theta,
    )


def backsubstitute_eliminated(
    chains: list[Chain], values: dict[int, bool]
) -> dict[int, bool]:
    """Assign merge-cancelled variables so every consumed ternary holds.

    For each chain, replay eliminations newest-first: a cancelled variable
    still unassigned gets the value forcing its ternary true. Variables
    already assigned (they survived elsewhere in the system or the residual)
    are left untouched. Returns only the newly assigned variables.
    """
    added: dict[int, bool] = {}
    for chain in chains:
        for var, ternary_eq in reversed(chain.eliminated):
            if var in values or var in added:
                continue
            acc = ternary_eq.rhs
            for other in ternary_eq.vars:
                if other == var:
                    continue
                val = values.get(other)
                if val is None:
                    val = added.get(other, False)
                acc ^= int(val)
            added[var] = bool(acc)
    return added


def dump_equations(equations: list[XorEquation]) -> str:
    """Line format 'x <v1> <v2> ... = <0|1>' for inspection and fixtures."""
    lines = []
    for eq in equations:
        parts = ["x", *map(str, eq.sorted_vars()), "=", str(eq.rhs)]
        lines.append(" ".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")
