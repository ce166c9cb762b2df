"""Pure-Python kernels: the fallback when the compiled extension is absent.

These mirror _speedups.pyx operation for operation; both backends must
produce bit-identical results. Keep any behavioral change synchronized.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

NAME = "python"


def walk(flat, max_flips: int, tries: int, collect_trace: bool):
    """Derandomized local search on a flat formula.

    Returns (found, assignment uint8 array indexed by var, total_flips,
    flips_per_try, tries_executed, best_unsat, trace list). Odd-numbered
    tries start all-false, even-numbered all-true. The flip counter runs
    across tries; flip recency and the round-robin cursor reset per try.
    """
    nv = flat.num_vars
    nc = flat.num_clauses
    lits = flat.lits.tolist()
    offs = flat.offs.tolist()
    ids = flat.ids.tolist()
    occ_offs = flat.occ_offs.tolist()
    occ_cls = flat.occ_cls.tolist()
    occ_neg = flat.occ_neg.tolist()

    assign = [0] * (nv + 1)
    num_true = [0] * nc
    is_unsat = [False] * nc
    trace: list[tuple[int, int, int, int]] = []

    best_unsat = -1
    best_assign = assign[:]
    flip_counter = 0
    flips_per_try = []
    tries_done = 0

    for t in range(1, tries + 1):
        tries_done = t
        init = 1 if t % 2 == 0 else 0
        for v in range(1, nv + 1):
            assign[v] = init
        last_flip = [0] * (nv + 1)
        cursor = 0
        unsat_count = 0
        for ci in range(nc):
            cnt = 0
            for k in range(offs[ci], offs[ci + 1]):
                lit = lits[k]
                if (lit > 0) == (assign[lit if lit > 0 else -lit] == 1):
                    cnt += 1
            num_true[ci] = cnt
            is_unsat[ci] = cnt == 0
            if cnt == 0:
                unsat_count += 1
        if best_unsat < 0 or unsat_count < best_unsat:
            best_unsat = unsat_count
            best_assign = assign[:]

        flips_this_try = 0
        while True:
            if unsat_count == 0:
                flips_per_try.append(flips_this_try)
                return (True, np.array(assign, dtype=np.uint8), flip_counter,
                        flips_per_try, tries_done, 0, trace)
            if flips_this_try >= max_flips:
                break

            ci = cursor
            while not is_unsat[ci]:
                ci += 1
                if ci == nc:
                    ci = 0
            cursor = ci + 1 if ci + 1 < nc else 0

            var = _novelty_pick(ci, lits, offs, occ_offs, occ_cls, occ_neg,
                                assign, num_true, last_flip, flip_counter)

            # Flip and update clause truth counts incrementally.
            newval = 1 - assign[var]
            assign[var] = newval
            for k in range(occ_offs[var], occ_offs[var + 1]):
                c = occ_cls[k]
                true_now = (newval == 0) if occ_neg[k] else (newval == 1)
                if true_now:
                    if num_true[c] == 0:
                        is_unsat[c] = False
                        unsat_count -= 1
                    num_true[c] += 1
                else:
                    num_true[c] -= 1
                    if num_true[c] == 0:
                        is_unsat[c] = True
                        unsat_count += 1
            flip_counter += 1
            last_flip[var] = flip_counter
            flips_this_try += 1
            if collect_trace:
                trace.append((t, flip_counter, ids[ci], var))
            if unsat_count < best_unsat:
                best_unsat = unsat_count
                best_assign = assign[:]
        flips_per_try.append(flips_this_try)

    return (False, np.array(best_assign, dtype=np.uint8), flip_counter,
            flips_per_try, tries_done, best_unsat, trace)


def _novelty_pick(ci, lits, offs, occ_offs, occ_cls, occ_neg,
                  assign, num_true, last_flip, flip_counter):
    """Deterministic Novelty: best by makes-breaks unless most recent."""
    start, end = offs[ci], offs[ci + 1]
    if end - start == 1:
        lit = lits[start]
        return lit if lit > 0 else -lit

    ranked = []
    max_lf = 0
    for k in range(start, end):
        lit = lits[k]
        v = lit if lit > 0 else -lit
        makes = 0
        breaks = 0
        for j in range(occ_offs[v], occ_offs[v + 1]):
            c = occ_cls[j]
            nt = num_true[c]
            if nt == 0:
                makes += 1
            elif nt == 1:
                lit_true = (assign[v] == 0) if occ_neg[j] else (assign[v] == 1)
                if lit_true:
                    breaks += 1
        lf = last_flip[v]
        if lf > max_lf:
            max_lf = lf
        ranked.append((breaks - makes, lf, v))
    ranked.sort()
    best = ranked[0][2]
    if last_flip[best] > 0 and last_flip[best] == max_lf:
        if flip_counter % 2 == 1:
            return ranked[1][2]
    return best


def ball_search(flat, y_vars, center_bits, z_pivots, z_center_bits,
                z_cols, radius: int):
    """Test Hamming-ball candidates in canonical order; stop at first accept.

    For each candidate: free-variable bits seed the assignment together with
    the Z-class pivot values (center values XOR the flipped columns), unit
    resolution runs on the residual, and the candidate is accepted when no
    conflict arises and the resolution's false-completion satisfies every
    residual clause.

    Returns (hit_index, tested, y_bits, assignment int8 array, distance);
    hit_index is -1 when the ball is exhausted.
    """
    nv = flat.num_vars
    nc = flat.num_clauses
    lits = flat.lits.tolist()
    offs = flat.offs.tolist()
    occ_offs = flat.occ_offs.tolist()
    occ_cls = flat.occ_cls.tolist()
    occ_neg = flat.occ_neg.tolist()
    y_vars = list(y_vars)
    center = [int(b) for b in center_bits]
    z_pivots = list(z_pivots)
    z_center = [int(b) for b in z_center_bits]
    cols = [list(col) for col in z_cols]  # cols[j][r]: dz_r/dy_j
    n_y = len(y_vars)
    mz = len(z_pivots)

    tested = 0
    index = 0
    for dist in range(0, min(radius, n_y) + 1):
        flip_sets = [()] if dist == 0 else combinations(range(n_y), dist)
        for flips in flip_sets:
            ybits = center[:]
            zbits = z_center[:]
            for j in flips:
                ybits[j] ^= 1
                col = cols[j]
                for r in range(mz):
                    zbits[r] ^= col[r]
            tested += 1
            assign = _unit_resolve(
                lits, offs, occ_offs, occ_cls, occ_neg, nv, nc,
                y_vars, ybits, z_pivots, zbits)
            if assign is not None:
                return (index, tested, np.array(ybits, dtype=np.uint8),
                        np.array(assign, dtype=np.int8), dist)
            index += 1
    return (-1, tested, None, None, -1)


def _unit_resolve(lits, offs, occ_offs, occ_cls, occ_neg, nv, nc,
                  y_vars, ybits, z_pivots, zbits):
    """Seeded unit resolution + false-completion satisfaction check.

    Returns the assignment list (-1 unassigned / 0 / 1) when the candidate
    is accepted, else None.
    """
    assign = [-1] * (nv + 1)
    queue = []
    for j, v in enumerate(y_vars):
        assign[v] = ybits[j]
        queue.append(v)
    for r, v in enumerate(z_pivots):
        assign[v] = zbits[r]
        queue.append(v)

    sat = [False] * nc
    nfalse = [0] * nc

    def examine(c):
        """Re-derive clause state exactly; returns False on conflict."""
        pending = 0
        unassigned = 0
        for i in range(offs[c], offs[c + 1]):
            lit = lits[i]
            v2 = lit if lit > 0 else -lit
            a = assign[v2]
            if a < 0:
                unassigned += 1
                pending = lit
            elif (a == 1) == (lit > 0):
                sat[c] = True
                return True
        if unassigned == 0:
            return False
        if unassigned == 1:
            v2 = pending if pending > 0 else -pending
            assign[v2] = 1 if pending > 0 else 0
            queue.append(v2)
        return True

    # Clauses that are unit purely by size fire before any propagation.
    for c in range(nc):
        if offs[c + 1] - offs[c] == 1 and not sat[c]:
            if not examine(c):
                return None

    head = 0
    while head < len(queue):
        var = queue[head]
        head += 1
        value = assign[var]
        for k in range(occ_offs[var], occ_offs[var + 1]):
            c = occ_cls[k]
            if sat[c]:
                continue
            if (value == 0) if occ_neg[k] else (value == 1):
                sat[c] = True
                continue
            nfalse[c] += 1
            if nfalse[c] < offs[c + 1] - offs[c] - 1:
                continue
            if not examine(c):
                return None

    # Unassigned residual variables complete as false for the check.
    for c in range(nc):
        if sat[c]:
            continue
        ok = False
        for i in range(offs[c], offs[c + 1]):
            lit = lits[i]
            v2 = lit if lit > 0 else -lit
            a = assign[v2]
            if (a == 1) if lit > 0 else (a != 1):
                ok = True
                break
        if not ok:
            return None
    return assign


def brute_first_model(pos_masks, neg_masks, num_vars: int):
    """First satisfying assignment in counting order, or -1.

    Bit v-1 of the returned integer is variable v's value. Clause masks pack
    positive/negative occurrence bits the same way.
    """
    pos = [int(p) for p in pos_masks]
    neg = [int(n) for n in neg_masks]
    full = (1 << num_vars) - 1
    clauses = list(zip(pos, neg))
    for x in range(1 << num_vars):
        inv = x ^ full
        for p, n in clauses:
            if not (p & x) and not (n & inv):
                break
        else:
            return x
    return -1
