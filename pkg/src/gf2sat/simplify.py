"""Formula simplification (units + binary equivalencies) and unit resolution."""

from __future__ import annotations

from dataclasses import dataclass

from .formula import Assignment, Clause, CnfFormula, Literal


@dataclass(frozen=True)
class Fixed:
    """Variable forced to a constant during simplification."""

    var: int
    value: bool


@dataclass(frozen=True)
class Equiv:
    """Variable replaced everywhere by a representative literal."""

    var: int
    rep: Literal


class ReconstructionMap(list):
    """Ordered substitution log; replaying it in reverse undoes simplify().

    Each entry is a Fixed or Equiv record. No variable is the substituted
    variable of more than one record.
    """


def reconstruct(a: Assignment, m: ReconstructionMap) -> Assignment:
    """Extend an assignment over the simplified variables to the originals.

    Records are applied in reverse insertion order. Raises ValueError when an
    Equiv record's representative is unassigned (internal-consistency error).
    """
    out = a.copy()
    for rec in reversed(m):
        if isinstance(rec, Fixed):
            out[rec.var] = rec.value
        else:
            base = out.get(rec.rep.var)
            if base is None:
                raise ValueError(
                    f"reconstruction references unassigned variable {rec.rep.var}"
                )
            out[rec.var] = base != rec.rep.negated
    return out


def simplify(f: CnfFormula) -> tuple[CnfFormula, ReconstructionMap, bool]:
    """Reduce unit clauses and binary equivalency pairs to fixpoint.

    Alternates two passes until neither applies: (a) unit propagation, which
    deletes satisfied clauses and falsified literals; (b) detection of a pair
    {-x v y}, {x v -y}, substituting the lower-numbered variable for the
    higher throughout. Every action is logged in the ReconstructionMap.

    Returns (simplified formula, map, conflict). On conflict (an empty clause
    arose) only the flag is meaningful. Clause ids survive simplification.
    """
    # Mutable working copy: id -> list of signed literals.
    work: dict[int, list[int]] = {c.id: list(c.to_ints()) for c in f.clauses}
    occ_ids: dict[int, set[int]] = {v: set() for v in range(1, f.num_vars + 1)}
    for cid, lits in work.items():
        for lit in lits:
            occ_ids[abs(lit)].add(cid)

    records = ReconstructionMap()
    fixed: dict[int, bool] = {}

    def delete_clause(cid: int):
        for lit in work[cid]:
            occ_ids[abs(lit)].discard(cid)
        del work[cid]

    def assign(var: int, value: bool) -> bool:
        """Fix a variable; returns False on conflict."""
        if var in fixed:
            return fixed[var] == value
        fixed[var] = value
        records.append(Fixed(var, value))
        for cid in list(occ_ids[var]):
            lits = work[cid]
            true_lit = var if value else -var
            if true_lit in lits:
                delete_clause(cid)
            else:
                lits.remove(-true_lit)
                occ_ids[var].discard(cid)
                if not lits:
                    return False
        return True

    def propagate_units() -> bool:
        while True:
            unit = None
            for cid in sorted(work):
                if len(work[cid]) == 1:
                    unit = work[cid][0]
                    break
            if unit is None:
                return True
            if not assign(abs(unit), unit > 0):
                return False

    def find_equiv_pair():
        """Lowest (u, v) with both {-u v v'} and {u v -v'} present."""
        halves: dict[tuple[int, int], set[bool]] = {}
        for lits in work.values():
            if len(lits) != 2:
                continue
            a, b = sorted(lits, key=abs)
            u, v = abs(a), abs(b)
            if u == v:
                continue
            if a < 0 < b:
                halves.setdefault((u, v), set()).add(True)
            elif a > 0 > b:
                halves.setdefault((u, v), set()).add(False)
        complete = [pair for pair, sides in halves.items() if len(sides) == 2]
        return min(complete) if complete else None

    def substitute(var: int, rep: int):
        """Replace every +-var by +-rep and renormalize touched clauses."""
        records.append(Equiv(var, Literal(rep)))
        for cid in list(occ_ids[var]):
            lits = work[cid]
            new = [(rep if lit == var else -rep) if abs(lit) == var else lit
                   for lit in lits]
            if any(-lit in new for lit in new):
                delete_clause(cid)
                continue
            deduped: list[int] = []
            for lit in new:
                if lit not in deduped:
                    deduped.append(lit)
            for lit in lits:
                occ_ids[abs(lit)].discard(cid)
            work[cid] = deduped
            for lit in deduped:
                occ_ids[abs(lit)].add(cid)

    conflict = False
    while True:
        if not propagate_units():
            conflict = True
            break
        pair = find_equiv_pair()
        if pair is None:
            break
        rep, var = pair
        substitute(var, rep)

    clauses = [
        Clause(tuple(Literal.from_int(x) for x in work[cid]), id=cid)
        for cid in sorted(work)
    ]
    occ = [0] * (f.num_vars + 1)
    for clause in clauses:
        for v in clause.variables():
            occ[v] += 1
    simplified = CnfFormula(f.num_vars, clauses, occ)
    return simplified, records, conflict


def unit_resolution(
    f: CnfFormula, v: Assignment
) -> tuple[Assignment, bool]:
    """Fix as many literals as possible by repeated unit inference.

    While some clause has every literal false except exactly one unassigned
    literal, that literal is fixed true. Returns the extended assignment at
    fixpoint and a conflict flag (a clause went all-false). The input is
    never mutated; output always extends input.
    """
    assign = Assignment(v)
    m = len(f.clauses)
    sat = [False] * m
    occs: dict[int, list[int]] = {}
    for idx, clause in enumerate(f.clauses):
        for lit in clause.literals:
            occs.setdefault(lit.var, []).append(idx)

    queue: list[int] = []

    def examine(idx: int) -> bool:
        """Re-derive clause state; fires a unit inference. True on conflict."""
        pending = None
        unassigned = 0
        for lit in f.clauses[idx].literals:
            val = assign.get(lit.var)
            if val is None:
                unassigned += 1
                pending = lit
            elif val != lit.negated:
                sat[idx] = True
                return False
        if unassigned == 0:
            return True
        if unassigned == 1:
            assign[pending.var] = not pending.negated
            queue.append(pending.var)
        return False

    for idx in range(m):
        if examine(idx):
            return assign, True
    while queue:
        var = queue.pop(0)
        for idx in occs.get(var, ()):
            if not sat[idx] and examine(idx):
                return assign, True
    return assign, False
