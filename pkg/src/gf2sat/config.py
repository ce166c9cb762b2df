"""Solver configuration knobs."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class SolverConfig:
    """Tunables of the solving pipeline.

    The frequent-variable threshold is
    ``theta_multiplier * ceil(#clause/#var) + theta_offset`` unless
    theta_override pins an absolute value. radius bounds the free-variable
    Hamming-ball repair; flip_multiplier scales the per-try flip budget of
    the local search.
    """

    theta_multiplier: int = 3
    theta_offset: int = 2
    radius: int = 3
    flip_multiplier: int = 2
    tries: int = 2
    theta_override: int | None = None

    def __post_init__(self):
        for name in ("theta_multiplier", "theta_offset", "radius",
                     "flip_multiplier", "tries"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.theta_override is not None and self.theta_override < 0:
            raise ValueError("theta_override must be >= 0")
