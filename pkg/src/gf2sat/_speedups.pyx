# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Mirrors _kernels_py.py operation for operation; both
backends must produce bit-identical results."""

import numpy as np

NAME = "compiled"


def walk(flat, int max_flips, int tries, bint collect_trace):
    """See _kernels_py.walk; identical contract and semantics."""
    cdef int nv = flat.num_vars
    cdef int nc = flat.num_clauses
    cdef int[:] lits = flat.lits
    cdef int[:] offs = flat.offs
    cdef int[:] ids = flat.ids
    cdef int[:] occ_offs = flat.occ_offs
    cdef int[:] occ_cls = flat.occ_cls
    cdef signed char[:] occ_neg = flat.occ_neg

    assign_np = np.zeros(nv + 1, dtype=np.uint8)
    best_np = np.zeros(nv + 1, dtype=np.uint8)
    cdef unsigned char[:] assign = assign_np
    cdef unsigned char[:] best_assign = best_np
    num_true_np = np.zeros(nc, dtype=np.int32)
    cdef int[:] num_true = num_true_np
    is_unsat_np = np.zeros(nc, dtype=np.uint8)
    cdef unsigned char[:] is_unsat = is_unsat_np
    last_flip_np = np.zeros(nv + 1, dtype=np.int64)
    cdef long long[:] last_flip = last_flip_np

    trace = []
    flips_per_try = []
    cdef long long flip_counter = 0
    cdef long long best_unsat = -1
    cdef int tries_done = 0
    cdef int t, v, ci, k, cnt, lit, var, cursor, newval, c
    cdef int unsat_count, flips_this_try
    cdef unsigned char init

    for t in range(1, tries + 1):
        tries_done = t
        init = 1 if t % 2 == 0 else 0
        for v in range(1, nv + 1):
            assign[v] = init
        for v in range(nv + 1):
            last_flip[v] = 0
        cursor = 0
        unsat_count = 0
        for ci in range(nc):
            cnt = 0
            for k in range(offs[ci], offs[ci + 1]):
                lit = lits[k]
                if lit > 0:
                    if assign[lit] == 1:
                        cnt += 1
                else:
                    if assign[-lit] == 0:
                        cnt += 1
            num_true[ci] = cnt
            is_unsat[ci] = 1 if cnt == 0 else 0
            if cnt == 0:
                unsat_count += 1
        if best_unsat < 0 or unsat_count < best_unsat:
            best_unsat = unsat_count
            best_np[:] = assign_np

        flips_this_try = 0
        while True:
            if unsat_count == 0:
                flips_per_try.append(flips_this_try)
                return (True, assign_np.copy(), int(flip_counter),
                        flips_per_try, tries_done, 0, trace)
            if flips_this_try >= max_flips:
                break

            ci = cursor
            while is_unsat[ci] == 0:
                ci += 1
                if ci == nc:
                    ci = 0
            cursor = ci + 1 if ci + 1 < nc else 0

            var = _novelty_pick(ci, lits, offs, occ_offs, occ_cls, occ_neg,
                                assign, num_true, last_flip, flip_counter)

            newval = 1 - assign[var]
            assign[var] = <unsigned char>newval
            for k in range(occ_offs[var], occ_offs[var + 1]):
                c = occ_cls[k]
                if (newval == 0) if occ_neg[k] else (newval == 1):
                    if num_true[c] == 0:
                        is_unsat[c] = 0
                        unsat_count -= 1
                    num_true[c] += 1
                else:
                    num_true[c] -= 1
                    if num_true[c] == 0:
                        is_unsat[c] = 1
                        unsat_count += 1
            flip_counter += 1
            last_flip[var] = flip_counter
            flips_this_try += 1
            if collect_trace:
                trace.append((t, int(flip_counter), int(ids[ci]), var))
            if unsat_count < best_unsat:
                best_unsat = unsat_count
                best_np[:] = assign_np
        flips_per_try.append(flips_this_try)

    return (False, best_np.copy(), int(flip_counter), flips_per_try,
            tries_done, int(best_unsat), trace)


cdef int _novelty_pick(int ci, int[:] lits, int[:] offs, int[:] occ_offs,
                       int[:] occ_cls, signed char[:] occ_neg,
                       unsigned char[:] assign, int[:] num_true,
                       long long[:] last_flip, long long flip_counter):
    cdef int start = offs[ci]
    cdef int end = offs[ci + 1]
    cdef int lit, v, k, j, c, nt, makes, breaks
    cdef long long lf, max_lf = 0
    cdef bint lit_true
    # Key = (breaks - makes, last_flip, var), smaller is better.
    cdef int best_v = 0, second_v = 0
    cdef long long best_k0 = 0, best_k1 = 0, sec_k0 = 0, sec_k1 = 0
    cdef long long k0
    cdef bint have_best = False, have_second = False

    if end - start == 1:
        lit = lits[start]
        return lit if lit > 0 else -lit

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
        k0 = breaks - makes
        if (not have_best or k0 < best_k0
                or (k0 == best_k0 and (lf < best_k1
                                       or (lf == best_k1 and v < best_v)))):
            if have_best:
                sec_k0, sec_k1, second_v = best_k0, best_k1, best_v
                have_second = True
            best_k0, best_k1, best_v = k0, lf, v
            have_best = True
        elif (not have_second or k0 < sec_k0
                or (k0 == sec_k0 and (lf < sec_k1
                                      or (lf == sec_k1 and v < second_v)))):
            sec_k0, sec_k1, second_v = k0, lf, v
            have_second = True

    if last_flip[best_v] > 0 and last_flip[best_v] == max_lf:
        if flip_counter % 2 == 1:
            return second_v
    return best_v


def ball_search(flat, y_vars_in, center_in, z_pivots_in, z_center_in,
                z_cols_in, int radius):
    """See _kernels_py.ball_search; identical contract and semantics."""
    cdef int nv = flat.num_vars
    cdef int nc = flat.num_clauses
    cdef int[:] lits = flat.lits
    cdef int[:] offs = flat.offs
    cdef int[:] occ_offs = flat.occ_offs
    cdef int[:] occ_cls = flat.occ_cls
    cdef signed char[:] occ_neg = flat.occ_neg

    y_np = np.ascontiguousarray(y_vars_in, dtype=np.int32)
    center_np = np.ascontiguousarray(center_in, dtype=np.uint8)
    zp_np = np.ascontiguousarray(z_pivots_in, dtype=np.int32)
    zc_np = np.ascontiguousarray(z_center_in, dtype=np.uint8)
    cdef int n_y = y_np.shape[0]
    cdef int mz = zp_np.shape[0]
    cols_np = np.ascontiguousarray(z_cols_in, dtype=np.uint8)
    if cols_np.size == 0:
        cols_np = np.zeros((n_y if n_y else 1, mz if mz else 1),
                           dtype=np.uint8)
    cdef int[:] y_vars = y_np
    cdef unsigned char[:] center = center_np
    cdef int[:] z_pivots = zp_np
    cdef unsigned char[:] z_center = zc_np
    cdef unsigned char[:, :] cols = cols_np

    assign_np = np.zeros(nv + 1, dtype=np.int8)
    cdef signed char[:] assign = assign_np
    sat_np = np.zeros(nc, dtype=np.uint8)
    cdef unsigned char[:] sat = sat_np
    nfalse_np = np.zeros(nc, dtype=np.int32)
    cdef int[:] nfalse = nfalse_np
    queue_np = np.zeros(nv + 2, dtype=np.int32)
    cdef int[:] queue = queue_np
    ybits_np = np.zeros(n_y, dtype=np.uint8)
    cdef unsigned char[:] ybits = ybits_np
    zbits_np = np.zeros(mz, dtype=np.uint8)
    cdef unsigned char[:] zbits = zbits_np
    flips_np = np.zeros(radius + 1, dtype=np.int32)
    cdef int[:] flips = flips_np

    cdef int dist, j, r, i
    cdef long long tested = 0, index = 0
    cdef int max_dist = radius if radius < n_y else n_y
    cdef bint more

    for dist in range(0, max_dist + 1):
        # Initialize the first flipped-index combination of this distance.
        for i in range(dist):
            flips[i] = i
        while True:
            for j in range(n_y):
                ybits[j] = center[j]
            for r in range(mz):
                zbits[r] = z_center[r]
            for i in range(dist):
                j = flips[i]
                ybits[j] ^= 1
                for r in range(mz):
                    zbits[r] ^= cols[j, r]
            tested += 1
            if _unit_resolve(lits, offs, occ_offs, occ_cls, occ_neg, nv, nc,
                             y_vars, ybits, z_pivots, zbits, assign, sat,
                             nfalse, queue):
                return (int(index), int(tested), ybits_np.copy(),
                        assign_np.copy(), dist)
            index += 1
            if dist == 0:
                break
            # Advance to the next combination in lexicographic order.
            more = False
            i = dist - 1
            while i >= 0:
                if flips[i] != n_y - dist + i:
                    flips[i] += 1
                    for j in range(i + 1, dist):
                        flips[j] = flips[j - 1] + 1
                    more = True
                    break
                i -= 1
            if not more:
                break
    return (-1, int(tested), None, None, -1)


cdef bint _examine(int c, int[:] lits, int[:] offs, signed char[:] assign,
                   unsigned char[:] sat, int[:] queue, int* queue_len):
    """Re-derive clause state exactly; returns False on conflict."""
    cdef int pending = 0
    cdef int unassigned = 0
    cdef int i, lit, v2
    cdef signed char a
    for i in range(offs[c], offs[c + 1]):
        lit = lits[i]
        v2 = lit if lit > 0 else -lit
        a = assign[v2]
        if a < 0:
            unassigned += 1
            pending = lit
        elif (a == 1) == (lit > 0):
            sat[c] = 1
            return True
    if unassigned == 0:
        return False
    if unassigned == 1:
        v2 = pending if pending > 0 else -pending
        assign[v2] = 1 if pending > 0 else 0
        queue[queue_len[0]] = v2
        queue_len[0] += 1
    return True


cdef bint _unit_resolve(int[:] lits, int[:] offs, int[:] occ_offs,
                        int[:] occ_cls, signed char[:] occ_neg,
                        int nv, int nc, int[:] y_vars,
                        unsigned char[:] ybits, int[:] z_pivots,
                        unsigned char[:] zbits, signed char[:] assign,
                        unsigned char[:] sat, int[:] nfalse, int[:] queue):
    cdef int j, r, v, c, k, head, i, lit, v2
    cdef int queue_len = 0
    cdef signed char value
    cdef bint ok

    for v in range(nv + 1):
        assign[v] = -1
    for c in range(nc):
        sat[c] = 0
        nfalse[c] = 0
    for j in range(y_vars.shape[0]):
        v = y_vars[j]
        assign[v] = <signed char>ybits[j]
        queue[queue_len] = v
        queue_len += 1
    for r in range(z_pivots.shape[0]):
        v = z_pivots[r]
        assign[v] = <signed char>zbits[r]
        queue[queue_len] = v
        queue_len += 1

    for c in range(nc):
        if offs[c + 1] - offs[c] == 1 and sat[c] == 0:
            if not _examine(c, lits, offs, assign, sat, queue, &queue_len):
                return False

    head = 0
    while head < queue_len:
        v = queue[head]
        head += 1
        value = assign[v]
        for k in range(occ_offs[v], occ_offs[v + 1]):
            c = occ_cls[k]
            if sat[c]:
                continue
            if (value == 0) if occ_neg[k] else (value == 1):
                sat[c] = 1
                continue
            nfalse[c] += 1
            if nfalse[c] < offs[c + 1] - offs[c] - 1:
                continue
            if not _examine(c, lits, offs, assign, sat, queue, &queue_len):
                return False

    for c in range(nc):
        if sat[c]:
            continue
        ok = False
        for i in range(offs[c], offs[c + 1]):
            lit = lits[i]
            v2 = lit if lit > 0 else -lit
            if (assign[v2] == 1) if lit > 0 else (assign[v2] != 1):
                ok = True
                break
        if not ok:
            return False
    return True


def brute_first_model(pos_masks, neg_masks, int num_vars):
    """See _kernels_py.brute_first_model; identical contract."""
    pos_np = np.ascontiguousarray(pos_masks, dtype=np.uint64)
    neg_np = np.ascontiguousarray(neg_masks, dtype=np.uint64)
    cdef unsigned long long[:] pos = pos_np
    cdef unsigned long long[:] neg = neg_np
    cdef int m = pos_np.shape[0]
    cdef unsigned long long x, inv, full
    cdef unsigned long long limit = (<unsigned long long>1) << num_vars
    cdef int i
    cdef bint ok
    full = limit - 1
    x = 0
    while x < limit:
        inv = x ^ full
        ok = True
        for i in range(m):
            if (pos[i] & x) == 0 and (neg[i] & inv) == 0:
                ok = False
                break
        if ok:
            return int(x)
        x += 1
    return -1
