"""Benchmark harness: per-instance rows in the run-time table layout."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

from .config import SolverConfig
from .driver import solve
from .formula import parse_dimacs


@dataclass
class BenchRow:
    name: str
    n_vars: int = 0
    n_clauses: int = 0
    status: str = ""
    best_time: float = 0.0
    all_times: list[float] = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    error: str | None = None


@dataclass
class BenchReport:
    rows: list[BenchRow]
    repetitions: int

    def to_text(self) -> str:
        header = (
            f"{'instance':<20} {'#var':>7} {'#clause':>8} {'status':>10} "
            f"{'time(s)':>9} {'hit_d':>5} {'flips':>7}"
        )
        lines = [header, "-" * len(header)]
        for r in self.rows:
            if r.error:
                lines.append(f"{r.name:<20} ERROR: {r.error}")
                continue
            lines.append(
                f"{r.name:<20} {r.n_vars:>7} {r.n_clauses:>8} {r.status:>10} "
                f"{r.best_time:>9.3f} {r.stats.get('hit_distance', '-'):>5} "
                f"{r.stats.get('walk_flips', '-'):>7}"
            )
        return "\n".join(lines) + "\n"

    def to_flat_records(self) -> str:
        """One machine-readable line per instance."""
        lines = []
        for r in self.rows:
            if r.error:
                lines.append(f"name={r.name} error={r.error!r}")
                continue
            parts = [
                f"name={r.name}", f"vars={r.n_vars}", f"clauses={r.n_clauses}",
                f"status={r.status}", f"time={r.best_time:.6f}",
                f"reps={self.repetitions}",
            ]
            parts.extend(
                f"{k}={v}" for k, v in r.stats.items() if k != "backend"
            )
            lines.append(" ".join(parts))
        return "\n".join(lines) + "\n"


def run_bench(
    paths: list[str | Path],
    cfg: SolverConfig | None = None,
    repetitions: int = 1,
) -> BenchReport:
    """Solve each file `repetitions` times; report the minimum wall time.

    Per-instance failures (missing file, parse error) land in the row and
    the run continues.
    """
    cfg = cfg or SolverConfig()
    repetitions = max(1, repetitions)
    rows: list[BenchRow] = []
    for path in paths:
        path = Path(path)
        row = BenchRow(name=path.name)
        rows.append(row)
        try:
            formula = parse_dimacs(path.read_text())
        except (OSError, ValueError) as exc:
            row.error = str(exc)
            continue
        row.n_vars = formula.num_vars
        row.n_clauses = len(formula.clauses)
        result = None
        for _ in range(repetitions):
            t0 = time.perf_counter()
            result = solve(formula, cfg)
            row.all_times.append(time.perf_counter() - t0)
        row.best_time = min(row.all_times)
        row.status = result.status
        row.stats = result.deterministic_stats()
        if result.reason:
            row.stats["reason"] = result.reason
    return BenchReport(rows, repetitions)
