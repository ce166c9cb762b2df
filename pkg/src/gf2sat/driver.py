"""Solving pipeline: simplify, extract, eliminate, walk, then repair the
free-variable assignment inside a bounded Hamming ball until unit resolution
plus a residual check accepts a candidate. A mandatory verification against
the original formula guards every Satisfied answer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import kernels
from .config import SolverConfig
from .extraction import (Chain, ExtractionResult, backsubstitute_eliminated,
                         compute_theta, extract)
from .flat import FlatFormula
from .formula import Assignment, CnfFormula, evaluate
from .gf2 import EchelonSystem, eval_rows, gauss_jordan
from .simplify import Equiv, Fixed, reconstruct, simplify, unit_resolution
from .walksat import swalksat

SATISFIED = "SATISFIED"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class YCandidate:
    """A free-variable vector at a known distance from the walk projection."""

    bits: tuple[int, ...]
    distance: int


def hamming_ball(center, radius: int):
    """Yield every 0/1 vector within the given Hamming distance of center.

    Ordered by increasing distance, then by lexicographically increasing
    flipped-index combinations; the first element is the center itself.
    A radius beyond the vector length is clamped.
    """
    base = tuple(int(b) for b in center)
    n = len(base)
    yield base
    for dist in range(1, min(radius, n) + 1):
        for flips in combinations(range(n), dist):
            candidate = list(base)
            for i in flips:
                candidate[i] ^= 1
            yield tuple(candidate)


def try_candidate(
    y: YCandidate, system: EchelonSystem, residual: CnfFormula
) -> tuple[bool, Assignment]:
    """Reference acceptance test for one free-variable candidate.

    Z-class pivots are evaluated at y, unit resolution runs on the residual
    seeded with the y and z values, and acceptance requires no conflict plus
    every residual clause satisfied once unassigned variables are read as
    false. Returns (accepted, the resolution's assignment).
    """
    seeds = Assignment(
        {v: bool(b) for v, b in zip(system.free_vars, y.bits)}
    )
    seeds.update(eval_rows(system, y.bits, "z"))
    result, conflict = unit_resolution(residual, seeds)
    if conflict:
        return False, result
    for clause in residual.clauses:
        if not any(result.get(l.var, False) != l.negated for l in clause.literals):
            return False, result
    return True, result


@dataclass
class SolveResult:
    status: str
    model: Assignment | None
    stats: dict
    reason: str | None = None
    trace: list[tuple[int, int, int, int]] = field(default_factory=list)

    def flat_stats(self) -> str:
        """One 'key=value' line per stat, insertion-ordered."""
        lines = [f"status={self.status}"]
        if self.reason:
            lines.append(f"reason={self.reason}")
        lines.extend(f"{k}={v}" for k, v in self.stats.items())
        return "\n".join(lines) + "\n"

    def deterministic_stats(self) -> dict:
        """Stats minus wall-clock keys; byte-identical across repeat runs."""
        return {k: v for k, v in self.stats.items()
                if not k.startswith("time_")}


def _pivot_preference(f: CnfFormula, frequent: set[int]) -> list[int]:
    """Frequent variables first (occurrence desc, index asc), then the rest."""
    return sorted(
        range(1, f.num_vars + 1),
        key=lambda v: (v not in frequent, -f.occ[v], v),
    )


def _assemble(
    num_vars: int,
    base: Assignment,
    chains: list[Chain],
    substituted: set[int],
) -> tuple[Assignment, int]:
    """Complete a partial assignment over the simplified variable universe.

    Merge-cancelled variables still unassigned get their implied values
    (keeping every consumed pattern clause true); everything else left
    unassigned defaults to false. Variables owned by the reconstruction map
    are excluded: reconstruct() fills those.
    """
    out = base.copy()
    added = backsubstitute_eliminated(chains, out)
    out.update(added)
    for v in range(1, num_vars + 1):
        if v not in out and v not in substituted:
            out[v] = False
    return out, len(added)


def solve(
    f: CnfFormula,
    cfg: SolverConfig | None = None,
    collect_trace: bool = False,
) -> SolveResult:
    """Run the full pipeline on a CNF formula.

    Returns SATISFIED with a model verified against every original clause,
    or UNKNOWN with a machine-readable reason code in ``reason`` (this solver
    never proves unsatisfiability). All counters land in ``stats``.
    """
    cfg = cfg or SolverConfig()
    stats: dict = {
        "n_vars": f.num_vars,
        "n_clauses": len(f.clauses),
        "backend": kernels.backend_name(),
    }
    t_start = time.perf_counter()

    def finish(status, model=None, reason=None, trace=()):
        stats["time_total"] = round(time.perf_counter() - t_start, 6)
        stats["verified"] = 1 if status == SATISFIED else 0
        return SolveResult(status, model, stats, reason, list(trace))

    t0 = time.perf_counter()
    simplified, recmap, conflict = simplify(f)
    stats["time_simplify"] = round(time.perf_counter() - t0, 6)
    stats["n_simplify_fixed"] = sum(1 for r in recmap if isinstance(r, Fixed))
    stats["n_simplify_equiv"] = sum(1 for r in recmap if isinstance(r, Equiv))
    if conflict:
        return finish(UNKNOWN, reason="unsat_by_simplification")
    stats["n_simplified_clauses"] = len(simplified.clauses)
    substituted = {r.var for r in recmap}

    theta = cfg.theta_override
    if theta is None:
        theta = compute_theta(simplified, cfg.theta_multiplier, cfg.theta_offset)
    stats["theta"] = theta

    t0 = time.perf_counter()
    ext = extract(simplified, theta)
    stats["time_extract"] = round(time.perf_counter() - t0, 6)
    stats["n_frequent"] = len(ext.frequent_vars)
    stats["n_ternaries"] = ext.consumed_ternaries
    stats["n_contradictory_triples"] = len(ext.contradictory_triples)
    stats["n_equations"] = len(ext.equations)
    stats["n_equation_vars"] = len(set().union(*[e.vars for e in ext.equations])
                                    if ext.equations else set())
    stats["n_structured"] = len(ext.structured_clause_ids)
    stats["n_removed_pattern_clauses"] = len(ext.removed_clause_ids)
    residual = ext.residual
    stats["n_residual_clauses"] = len(residual.clauses)
    stats["n_residual_vars"] = len(residual.live_vars())

    t0 = time.perf_counter()
    walk = swalksat(residual, cfg.flip_multiplier, cfg.tries,
                    collect_trace=collect_trace)
    stats["time_search"] = round(time.perf_counter() - t0, 6)
    stats["walk_found"] = 1 if walk.found else 0
    stats["walk_fallback"] = 0 if walk.found else 1
    stats["walk_flips"] = walk.flips
    stats["walk_tries"] = walk.tries
    stats["walk_best_unsat"] = walk.best_unsat

    t0 = time.perf_counter()
    system = gauss_jordan(ext.equations,
                          _pivot_preference(simplified, ext.frequent_vars),
                          frozenset(ext.frequent_vars))
    stats["time_eliminate"] = round(time.perf_counter() - t0, 6)
    if system.inconsistent:
        return finish(UNKNOWN, reason="structured_part_inconsistent",
                      trace=walk.trace)
    stats["n_free"] = len(system.free_vars)
    stats["n_x_rows"] = len(system.x_rows())
    stats["n_z_rows"] = len(system.z_rows())
    stats["n_dropped_zero_rows"] = system.dropped_zero_rows

    # Degenerate split: nothing structured at all, the walk result is final.
    if not ext.equations and not ext.structured_clause_ids and walk.found:
        assembled, n_back = _assemble(f.num_vars, walk.assignment,
                                      ext.chains, substituted)
        stats["backsub_assigned"] = n_back
        stats["candidates_tested"] = 0
        stats["hit_index"] = -1
        stats["hit_distance"] = 0
        model = reconstruct(assembled, recmap)
        t0 = time.perf_counter()
        report = evaluate(f, model)
        stats["time_verify"] = round(time.perf_counter() - t0, 6)
        if report.satisfied:
            return finish(SATISFIED, model=model, trace=walk.trace)
        return finish(UNKNOWN, reason="verification_failed", trace=walk.trace)

    # Project the walk assignment onto the free variables; free variables
    # absent from the residual default to false.
    center = tuple(
        int(walk.assignment[y]) if residual.occ[y] > 0 else 0
        for y in system.free_vars
    )
    z_rows = system.z_rows()
    z_pivots = np.array([r.pivot_var for r in z_rows], dtype=np.int32)
    z_center_vals = eval_rows(system, center, "z")
    z_center = np.array([int(z_center_vals[r.pivot_var]) for r in z_rows],
                        dtype=np.uint8)
    n_y = len(system.free_vars)
    z_cols = np.zeros((n_y, len(z_rows)), dtype=np.uint8)
    for j in range(n_y):
        for r, row in enumerate(z_rows):
            z_cols[j, r] = (row.coeffs >> j) & 1

    t0 = time.perf_counter()
    flat = FlatFormula.build(residual)
    y_vars = np.array(system.free_vars, dtype=np.int32)
    center_arr = np.array(center, dtype=np.uint8)
    hit_index, tested, ybits, assign_arr, dist = kernels.ball_search(
        flat, y_vars, center_arr, z_pivots, z_center, z_cols, cfg.radius)
    stats["time_repair"] = round(time.perf_counter() - t0, 6)
    stats["candidates_tested"] = tested
    stats["hit_index"] = hit_index
    stats["hit_distance"] = dist
    if hit_index < 0:
        return finish(UNKNOWN, reason="ball_exhausted", trace=walk.trace)

    base = Assignment()
    for v in range(1, f.num_vars + 1):
        val = assign_arr[v]
        if val >= 0:
            base[v] = bool(val)
    base.update(eval_rows(system, ybits, "x"))
    assembled, n_back = _assemble(f.num_vars, base, ext.chains, substituted)
    stats["backsub_assigned"] = n_back

    model = reconstruct(assembled, recmap)
    t0 = time.perf_counter()
    report = evaluate(f, model)
    stats["time_verify"] = round(time.perf_counter() - t0, 6)
    if report.satisfied:
        return finish(SATISFIED, model=model, trace=walk.trace)
    return finish(UNKNOWN, reason="verification_failed", trace=walk.trace)
