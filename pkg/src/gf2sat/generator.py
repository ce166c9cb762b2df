"""Synthetic parity-instance generator with a planted model.

Instances mimic the structure the solver targets: parity samples over pairs
of secret bits, each encoded as the 4-clause CNF form of a ternary XOR
equation with a per-sample output variable; some samples chain two pair
slots through an intermediate variable (exercising equation merging); noisy
samples flip the observed parity, which the output variable absorbs, so the
planted model always satisfies every clause. Binary filler clauses over
non-secret variables give the local search something to do without ever
touching the structured part.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .formula import Assignment, CnfFormula, to_dimacs

# Negation patterns completing each parity, in emission order.
_PATTERNS_RHS1 = ((False, False, False), (False, True, True),
                  (True, False, True), (True, True, False))
_PATTERNS_RHS0 = ((True, False, False), (False, True, False),
                  (False, False, True), (True, True, True))


@dataclass
class PlantedInstance:
    formula: CnfFormula
    planted: Assignment
    ternary_log: list[tuple[tuple[int, int, int], int]]
    noisy_samples: list[int]
    seed: int
    params: dict = field(default_factory=dict)

    def dimacs(self) -> str:
        comments = [
            "generated parity instance "
            + " ".join(f"{k}={v}" for k, v in self.params.items()),
            "planted "
            + " ".join(
                str(v if self.planted[v] else -v)
                for v in sorted(self.planted)
            ),
        ]
        return to_dimacs(self.formula, comments)


def _quadruple(triple: tuple[int, int, int], rhs: int) -> list[list[int]]:
    patterns = _PATTERNS_RHS1 if rhs == 1 else _PATTERNS_RHS0
    return [
        [-v if neg else v for v, neg in zip(triple, pattern)]
        for pattern in patterns
    ]


def generate_parity(
    k: int, samples: int, noise_flips: int, seed: int
) -> PlantedInstance:
    """Deterministically build a satisfiable parity-flavored CNF.

    k secret bits (variables 1..k) are paired into slots; each sample
    constrains one slot's parity through a fresh output variable, except
    that every fourth sample (when two slots exist) chains two slots via an
    intermediate variable instead. noise_flips of the non-chain samples get
    a flipped observation. Two filler variables plus a handful of binary
    clauses pad the random part. Returns the formula, the planted model and
    the emission log of planted ternary equations.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if samples < k:
        raise ValueError("samples must be >= k")
    if noise_flips < 0:
        raise ValueError("noise_flips must be >= 0")

    rng = random.Random(seed)
    n_slots = k // 2
    slots = [(2 * i + 1, 2 * i + 2) for i in range(n_slots)]
    spare = k if k % 2 else None

    planted = Assignment({v: bool(rng.getrandbits(1)) for v in range(1, k + 1)})
    next_var = k + 1
    clauses: list[list[int]] = []
    log: list[tuple[tuple[int, int, int], int]] = []

    chain_positions = [
        j for j in range(samples) if j % 4 == 3 and n_slots >= 2
    ]
    pair_positions = [j for j in range(samples) if j not in chain_positions]
    if noise_flips > len(pair_positions):
        raise ValueError(
            f"noise_flips={noise_flips} exceeds the {len(pair_positions)} "
            "non-chain samples"
        )
    noisy = sorted(rng.sample(pair_positions, noise_flips))
    noisy_set = set(noisy)

    def emit(triple: tuple[int, int, int], rhs: int):
        ordered = tuple(sorted(triple))
        clauses.extend(_quadruple(ordered, rhs))
        log.append((ordered, rhs))

    outputs: list[int] = []
    for j in range(samples):
        slot = j % n_slots
        a, b = slots[slot]
        if j in chain_positions:
            # Chain intermediates are merge-cancelled during extraction;
            # they must stay out of every other clause (fillers included).
            c, d = slots[(slot + 1) % n_slots]
            t = next_var
            next_var += 1
            planted[t] = bool(rng.getrandbits(1))
            r1 = planted[a] ^ planted[b] ^ planted[t]
            r2 = planted[t] ^ planted[c] ^ planted[d]
            emit((a, b, t), int(r1))
            emit((t, c, d), int(r2))
        else:
            o = next_var
            next_var += 1
            true_parity = planted[a] ^ planted[b]
            observed = true_parity ^ (j in noisy_set)
            planted[o] = true_parity ^ observed  # the disagreement indicator
            emit((a, b, o), int(observed))
            outputs.append(o)
    u1, u2 = next_var, next_var + 1
    next_var += 2
    planted[u1] = False
    planted[u2] = False

    # Anchor + implication link: candidates with a false anchor literal make
    # unit resolution earn its keep; the planted model needs neither filler.
    pool = [v for v in outputs] + ([spare] if spare else [])
    anchor_var = pool[0] if pool else u2
    anchor_lit = anchor_var if planted[anchor_var] else -anchor_var
    clauses.append([anchor_lit, u1])
    clauses.append([-u1, u2])

    # A few extra binary fillers over non-secret, non-intermediate variables,
    # each satisfied by the planted model; skip shapes that would form a
    # binary-equivalency pair with an existing filler.
    binary_seen = {(abs(anchor_lit), u1): (anchor_lit > 0, True),
                   (u1, u2): (False, True)}
    filler_pool = pool + [u1, u2]
    for _ in range(3):
        if len(filler_pool) < 2:
            break
        x, y = rng.sample(filler_pool, 2)
        lx = x if rng.getrandbits(1) else -x
        ly = y if rng.getrandbits(1) else -y
        if not (planted[abs(lx)] == (lx > 0) or planted[abs(ly)] == (ly > 0)):
            lx = -lx
        key = tuple(sorted((abs(lx), abs(ly))))
        signs = (lx > 0, ly > 0) if abs(lx) == key[0] else (ly > 0, lx > 0)
        prev = binary_seen.get(key)
        if prev is not None and prev[0] != signs[0] and prev[1] != signs[1]:
            continue  # would complete an equivalency pair
        binary_seen.setdefault(key, signs)
        clauses.append([lx, ly])

    num_vars = next_var - 1
    formula = CnfFormula.from_ints(num_vars, clauses)
    for v in range(1, num_vars + 1):
        planted.setdefault(v, False)
    return PlantedInstance(
        formula=formula,
        planted=planted,
        ternary_log=log,
        noisy_samples=noisy,
        seed=seed,
        params={"k": k, "samples": samples, "noise": noise_flips,
                "seed": seed},
    )
