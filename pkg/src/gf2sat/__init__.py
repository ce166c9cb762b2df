"""Hybrid SAT solving for parity-structured CNF.

The pipeline splits a formula into an algebraic part (XOR equations solved
over GF(2)) and a residual part (solved by a derandomized WalkSAT), then
fuses the partial solutions through a bounded Hamming-ball search with unit
resolution. Hot loops run in a compiled extension when available, with a
pure-Python fallback selected at import.
"""

from .brute import brute_force
from .config import SolverConfig
from .driver import SATISFIED, UNKNOWN, SolveResult, hamming_ball, solve
from .formula import (Assignment, Clause, CnfFormula, DimacsError, Literal,
                      evaluate, parse_dimacs, to_dimacs)
from .generator import generate_parity
from .kernels import backend_name
from .simplify import reconstruct, simplify, unit_resolution

__version__ = "0.1.0"

__all__ = [
    "Assignment", "Clause", "CnfFormula", "DimacsError", "Literal",
    "SATISFIED", "UNKNOWN", "SolveResult", "SolverConfig",
    "backend_name", "brute_force", "evaluate", "generate_parity",
    "hamming_ball", "parse_dimacs", "reconstruct", "simplify", "solve",
    "to_dimacs", "unit_resolution", "__version__",
]
