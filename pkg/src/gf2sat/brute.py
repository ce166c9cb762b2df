"""Exhaustive-enumeration oracle for small formulas."""

from __future__ import annotations

import numpy as np

from . import kernels
from .formula import Assignment, CnfFormula

VAR_CAP = 26


def brute_force(
    f: CnfFormula, cap: int = VAR_CAP
) -> tuple[bool, Assignment | None]:
    """First satisfying assignment in counting order (variable 1 is the
    lowest bit), or (False, None). Refuses formulas beyond the variable cap.
    """
    if f.num_vars > cap:
        raise ValueError(
            f"brute force capped at {cap} variables, formula has {f.num_vars}"
        )
    pos = np.zeros(len(f.clauses), dtype=np.uint64)
    neg = np.zeros(len(f.clauses), dtype=np.uint64)
    for i, clause in enumerate(f.clauses):
        p = n = 0
        for lit in clause.literals:
            if lit.negated:
                n |= 1 << (lit.var - 1)
            else:
                p |= 1 << (lit.var - 1)
        pos[i] = p
        neg[i] = n
    x = kernels.brute_first_model(pos, neg, f.num_vars)
    if x < 0:
        return False, None
    model = Assignment(
        {v: bool((int(x) >> (v - 1)) & 1) for v in range(1, f.num_vars + 1)}
    )
    return True, model
