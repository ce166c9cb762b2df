"""Derandomized WalkSAT: two fixed starts, round-robin clause selection,
deterministic Novelty variable picking, flip budget of twice the clause count.

SearchState is the readable reference engine used by the score/pick
operations and the bookkeeping audits; production runs go through the
selected kernel backend (see kernels.py), which implements the identical
walk on flat arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels
from .flat import FlatFormula
from .formula import Assignment, Clause, CnfFormula


class SearchState:
    """Incremental state of one try: assignment, recency, clause truth counts."""

    def __init__(self, f: CnfFormula, init_value: bool, flip_counter: int = 0):
        self.formula = f
        nv = f.num_vars
        self.assignment = Assignment({v: init_value for v in range(1, nv + 1)})
        self.last_flip = [0] * (nv + 1)
        self.flip_counter = flip_counter
        self.clause_cursor = 0
        self.occ: dict[int, list[tuple[int, bool]]] = {}
        for idx, clause in enumerate(f.clauses):
            for lit in clause.literals:
                self.occ.setdefault(lit.var, []).append((idx, lit.negated))
        self.num_true = []
        self.unsat: set[int] = set()  # clause ids
        self._unsat_idx: list[bool] = []
        for idx, clause in enumerate(f.clauses):
            cnt = sum(1 for lit in clause.literals
                      if self.assignment[lit.var] != lit.negated)
            self.num_true.append(cnt)
            self._unsat_idx.append(cnt == 0)
            if cnt == 0:
                self.unsat.add(clause.id)

    def score(self, var: int) -> int:
        """makes - breaks for flipping var in the current state."""
        makes = breaks = 0
        for idx, negated in self.occ.get(var, ()):
            nt = self.num_true[idx]
            if nt == 0:
                makes += 1
            elif nt == 1 and (self.assignment[var] != negated):
                breaks += 1
        return makes - breaks

    def novelty_pick(self, clause_idx: int) -> int:
        """Best-scoring variable unless it is the clause's most recent flip,
        in which case best and second-best alternate with counter parity."""
        clause = self.formula.clauses[clause_idx]
        variables = clause.variables()
        if len(variables) == 1:
            return variables[0]
        ranked = sorted(
            variables,
            key=lambda v: (-self.score(v), self.last_flip[v], v),
        )
        best = ranked[0]
        max_lf = max(self.last_flip[v] for v in variables)
        if self.last_flip[best] > 0 and self.last_flip[best] == max_lf:
            if self.flip_counter % 2 == 1:
                return ranked[1]
        return best

    def select_clause(self) -> int:
        """Advance the cursor cyclically to the next unsatisfied clause."""
        nc = len(self.formula.clauses)
        idx = self.clause_cursor
        while not self._unsat_idx[idx]:
            idx = idx + 1 if idx + 1 < nc else 0
        self.clause_cursor = idx + 1 if idx + 1 < nc else 0
        return idx

    def flip(self, var: int):
        value = not self.assignment[var]
        self.assignment[var] = value
        for idx, negated in self.occ.get(var, ()):
            if value != negated:  # literal became true
                if self.num_true[idx] == 0:
                    self._unsat_idx[idx] = False
                    self.unsat.discard(self.formula.clauses[idx].id)
                self.num_true[idx] += 1
            else:
                self.num_true[idx] -= 1
                if self.num_true[idx] == 0:
                    self._unsat_idx[idx] = True
                    self.unsat.add(self.formula.clauses[idx].id)
        self.flip_counter += 1
        self.last_flip[var] = self.flip_counter

    def step(self):
        """One select/pick/flip; None when already satisfied."""
        if not self.unsat:
            return None
        idx = self.select_clause()
        var = self.novelty_pick(idx)
        clause_id = self.formula.clauses[idx].id
        self.flip(var)
        return clause_id, var

    def audit(self):
        """Recompute truth counts from scratch; raises on any divergence."""
        for idx, clause in enumerate(self.formula.clauses):
            cnt = sum(1 for lit in clause.literals
                      if self.assignment[lit.var] != lit.negated)
            if cnt != self.num_true[idx]:
                raise AssertionError(
                    f"clause {clause.id}: incremental count {self.num_true[idx]}"
                    f" != recount {cnt}"
                )
            if (cnt == 0) != (clause.id in self.unsat):
                raise AssertionError(f"clause {clause.id}: unsat set out of sync")


def score(v: int, s: SearchState, f: CnfFormula | None = None) -> int:
    """Makes-minus-breaks score of flipping v; 0 when v occurs nowhere."""
    return s.score(v)


def novelty_pick(c: Clause, s: SearchState, f: CnfFormula | None = None) -> int:
    """Pick a variable of the (unsatisfied) clause per deterministic Novelty."""
    for idx, clause in enumerate(s.formula.clauses):
        if clause.id == c.id:
            return s.novelty_pick(idx)
    raise ValueError(f"clause id {c.id} not in the state's formula")


@dataclass
class WalkResult:
    found: bool
    assignment: Assignment
    flips: int
    flips_per_try: list[int]
    tries: int
    best_unsat: int
    trace: list[tuple[int, int, int, int]] = field(default_factory=list)

    def trace_lines(self) -> list[str]:
        return [f"t {t} f {n} c {c} v {v}" for t, n, c, v in self.trace]


def swalksat(
    f: CnfFormula,
    flip_multiplier: int = 2,
    tries: int = 2,
    collect_trace: bool = False,
    engine: str = "kernel",
) -> WalkResult:
    """Run the derandomized walk; budget is flip_multiplier * #clauses per try.

    Odd tries start all-false, even tries all-true. When no try satisfies the
    formula, the returned assignment is the one (over all tries, earliest on
    ties) that minimized the number of unsatisfied clauses. engine="reference"
    runs the SearchState loop with bookkeeping audits instead of the kernel.
    """
    max_flips = flip_multiplier * len(f.clauses)
    if engine == "kernel":
        flat = FlatFormula.build(f)
        found, arr, flips, per_try, tries_done, best_unsat, trace = (
            kernels.walk(flat, max_flips, tries, collect_trace)
        )
        assignment = Assignment(
            {v: bool(arr[v]) for v in range(1, f.num_vars + 1)}
        )
        return WalkResult(bool(found), assignment, flips, per_try,
                          tries_done, best_unsat, trace)
    if engine != "reference":
        raise ValueError(f"unknown engine {engine!r}")

    trace: list[tuple[int, int, int, int]] = []
    best_unsat = -1
    best_assignment: Assignment | None = None
    flip_counter = 0
    per_try: list[int] = []
    for t in range(1, tries + 1):
        state = SearchState(f, init_value=(t % 2 == 0),
                            flip_counter=flip_counter)
        if best_unsat < 0 or len(state.unsat) < best_unsat:
            best_unsat = len(state.unsat)
            best_assignment = state.assignment.copy()
        flips_this_try = 0
        while True:
            if not state.unsat:
                per_try.append(flips_this_try)
                return WalkResult(True, state.assignment, state.flip_counter,
                                  per_try, t, 0, trace)
            if flips_this_try >= max_flips:
                break
            clause_id, var = state.step()
            state.audit()
            flips_this_try += 1
            if collect_trace:
                trace.append((t, state.flip_counter, clause_id, var))
            if len(state.unsat) < best_unsat:
                best_unsat = len(state.unsat)
                best_assignment = state.assignment.copy()
        per_try.append(flips_this_try)
        flip_counter = state.flip_counter
    return WalkResult(False, best_assignment or Assignment(), flip_counter,
                      per_try, tries, best_unsat, trace)
