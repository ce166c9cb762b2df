"""Shared test helpers: independent oracles and small random formulas."""

from __future__ import annotations

import random
from itertools import product

import pytest

from gf2sat.formula import Assignment, CnfFormula


def clause_holds(ints, assignment) -> bool:
    """Independent clause check over signed-int literals."""
    return any(
        assignment[abs(l)] == (l > 0) for l in ints
    )


def formula_holds(f: CnfFormula, assignment) -> bool:
    """Independent full-formula check (no reliance on gf2sat.evaluate)."""
    return all(clause_holds(c.to_ints(), assignment) for c in f.clauses)


def all_assignments(variables):
    """Every total assignment over the given variables, counting order."""
    variables = list(variables)
    for bits in product([False, True], repeat=len(variables)):
        yield Assignment(dict(zip(variables, bits)))


def model_set(f: CnfFormula, variables=None) -> set[tuple]:
    """All models of f over the given variables, as sorted item tuples."""
    variables = list(variables) if variables is not None else f.live_vars()
    out = set()
    for a in all_assignments(variables):
        if formula_holds(f, a):
            out.add(tuple(sorted(a.items())))
    return out


def random_formula(rng: random.Random, num_vars: int, num_clauses: int,
                   min_len: int = 1, max_len: int = 3) -> CnfFormula:
    clauses = []
    for _ in range(num_clauses):
        width = rng.randint(min_len, min(max_len, num_vars))
        vars_ = rng.sample(range(1, num_vars + 1), width)
        clauses.append([v if rng.random() < 0.5 else -v for v in vars_])
    return CnfFormula.from_ints(num_vars, clauses)


@pytest.fixture
def rng():
    return random.Random(20240901)
