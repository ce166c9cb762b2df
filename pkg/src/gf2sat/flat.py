"""Array-packed formula layout shared by the compiled and fallback kernels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .formula import CnfFormula


@dataclass
class FlatFormula:
    """CSR-style clause and occurrence arrays for the hot loops.

    ``lits`` holds signed literals; clause k occupies ``lits[offs[k]:offs[k+1]]``
    and carries original id ``ids[k]``. Occurrences of variable v live at
    ``occ_cls/occ_neg[occ_offs[v]:occ_offs[v+1]]`` (clause index, negated flag).
    """

    num_vars: int
    num_clauses: int
    lits: np.ndarray
    offs: np.ndarray
    ids: np.ndarray
    occ_offs: np.ndarray
    occ_cls: np.ndarray
    occ_neg: np.ndarray
    var_occurs: np.ndarray

    @staticmethod
    def build(f: CnfFormula) -> FlatFormula:
        nv, nc = f.num_vars, len(f.clauses)
        sizes = [len(c) for c in f.clauses]
        total = sum(sizes)
        lits = np.zeros(total, dtype=np.int32)
        offs = np.zeros(nc + 1, dtype=np.int32)
        ids = np.zeros(nc, dtype=np.int32)
        counts = np.zeros(nv + 2, dtype=np.int32)
        k = 0
        for i, clause in enumerate(f.clauses):
            offs[i] = k
            ids[i] = clause.id
            for lit in clause.literals:
                lits[k] = lit.to_int()
                counts[lit.var + 1] += 1
                k += 1
        offs[nc] = k

        occ_offs = np.cumsum(counts, dtype=np.int32)
        fill = occ_offs.copy()
        occ_cls = np.zeros(total, dtype=np.int32)
        occ_neg = np.zeros(total, dtype=np.int8)
        for i, clause in enumerate(f.clauses):
            for lit in clause.literals:
                slot = fill[lit.var]
                occ_cls[slot] = i
                occ_neg[slot] = 1 if lit.negated else 0
                fill[lit.var] += 1
        var_occurs = np.zeros(nv + 1, dtype=np.uint8)
        for v in range(1, nv + 1):
            if occ_offs[v + 1] > occ_offs[v]:
                var_occurs[v] = 1
        return FlatFormula(nv, nc, lits, offs, ids, occ_offs, occ_cls,
                           occ_neg, var_occurs)
