"""Gauss-Jordan elimination over GF(2) into a solved pivot/free-variable form.

Rows are int bitmasks (bit v set = variable v present), so row operations
are single XORs. The solved system expresses each pivot variable as an
affine GF(2) function of the free variables; pivots inside the frequent set
form the X-class block, the others the Z-class block.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .extraction import XorEquation
from .formula import Assignment


@dataclass(frozen=True)
class Row:
    """pivot = const ^ XOR of free vars whose coefficient bit is set."""

    pivot_var: int
    coeffs: int  # bitmask over free-variable positions
    const: int

    def coeff_list(self, n_free: int) -> list[int]:
        return [(self.coeffs >> j) & 1 for j in range(n_free)]


@dataclass
class EchelonSystem:
    free_vars: list[int]
    rows: list[Row]
    row_class: list[str]  # "x" or "z", parallel to rows
    inconsistent: bool = False
    dropped_zero_rows: int = 0
    var_order: dict[int, int] = field(default_factory=dict)  # free var -> pos

    def x_rows(self) -> list[Row]:
        return [r for r, c in zip(self.rows, self.row_class) if c == "x"]

    def z_rows(self) -> list[Row]:
        return [r for r, c in zip(self.rows, self.row_class) if c == "z"]

    def pivot_vars(self) -> list[int]:
        return [r.pivot_var for r in self.rows]

    def equations(self) -> list[XorEquation]:
        """The system re-expressed as plain equations (pivot in the var set)."""
        out = []
        for row in self.rows:
            vars_ = {row.pivot_var}
            for j, y in enumerate(self.free_vars):
                if (row.coeffs >> j) & 1:
                    vars_.add(y)
            out.append(XorEquation(frozenset(vars_), row.const))
        return out


def gauss_jordan(
    eqs: list[XorEquation],
    pivot_pref: list[int],
    frequent: set[int] | frozenset[int] = frozenset(),
) -> EchelonSystem:
    """Reduce equations to the solved form, preferring early pivot_pref vars.

    Column by column in preference order: the first remaining row containing
    the variable becomes its pivot row and the variable is XORed out of every
    other row. Rows reducing to 0=0 are dropped (and counted); a row reducing
    to 0=1 marks the system inconsistent and stops elimination. Non-pivot
    variables of the input become the free variables, ascending.
    """
    masks: list[int] = []
    rhs: list[int] = []
    all_vars = 0
    for eq in eqs:
        m = 0
        for v in eq.vars:
            m |= 1 << v
        masks.append(m)
        rhs.append(eq.rhs)
        all_vars |= m

    dropped = 0
    pivot_of_row: dict[int, int] = {}  # row index -> pivot var
    alive = [True] * len(masks)

    def sweep_empty() -> bool:
        """Drop 0=0 rows among non-pivot rows; True if 0=1 was found."""
        nonlocal dropped
        for i in range(len(masks)):
            if alive[i] and i not in pivot_of_row and masks[i] == 0:
                if rhs[i]:
                    return True
                alive[i] = False
                dropped += 1
        return False

    if sweep_empty():
        return EchelonSystem([], [], [], inconsistent=True,
                             dropped_zero_rows=dropped)

    # Preference list may not mention every variable; cover stragglers so the
    # pass always reaches reduced form.
    seen = set(pivot_pref)
    order = list(pivot_pref) + [
        v for v in range(all_vars.bit_length())
        if (all_vars >> v) & 1 and v not in seen
    ]

    for v in order:
        bit = 1 << v
        if not (all_vars & bit):
            continue
        pivot_row = -1
        for i in range(len(masks)):
            if alive[i] and i not in pivot_of_row and (masks[i] & bit):
                pivot_row = i
                break
        if pivot_row < 0:
            continue
        pivot_of_row[pivot_row] = v
        for i in range(len(masks)):
            if i != pivot_row and alive[i] and (masks[i] & bit):
                masks[i] ^= masks[pivot_row]
                rhs[i] ^= rhs[pivot_row]
        if sweep_empty():
            return EchelonSystem([], [], [], inconsistent=True,
                                 dropped_zero_rows=dropped)

    pivots = set(pivot_of_row.values())
    free = sorted(
        v for v in range(all_vars.bit_length())
        if (all_vars >> v) & 1 and v not in pivots
    )
    pos = {y: j for j, y in enumerate(free)}

    built: list[Row] = []
    for i, v in sorted(pivot_of_row.items(), key=lambda kv: kv[1]):
        coeffs = 0
        rest = masks[i] & ~(1 << v)
        while rest:
            low = rest & -rest
            coeffs |= 1 << pos[low.bit_length() - 1]
            rest ^= low
        built.append(Row(v, coeffs, rhs[i]))

    built.sort(key=lambda r: (r.pivot_var not in frequent, r.pivot_var))
    classes = ["x" if r.pivot_var in frequent else "z" for r in built]
    return EchelonSystem(free, built, classes, inconsistent=False,
                         dropped_zero_rows=dropped, var_order=pos)


def eval_rows(sys: EchelonSystem, y, which: str = "both") -> Assignment:
    """Evaluate pivot rows at a free-variable vector (in free_vars order).

    ``which`` selects "x", "z" or "both" row classes. Raises on an
    inconsistent system or a wrong-length vector.
    """
    if sys.inconsistent:
        raise ValueError("cannot evaluate an inconsistent system")
    bits = [int(b) for b in y]
    if len(bits) != len(sys.free_vars):
        raise ValueError(
            f"expected {len(sys.free_vars)} free-variable bits, got {len(bits)}"
        )
    ymask = 0
    for j, b in enumerate(bits):
        if b:
            ymask |= 1 << j
    out = Assignment()
    for row, cls in zip(sys.rows, sys.row_class):
        if which != "both" and cls != which:
            continue
        value = row.const ^ (bin(row.coeffs & ymask).count("1") & 1)
        out[row.pivot_var] = bool(value)
    return out


def dump_system(sys: EchelonSystem) -> str:
    """Augmented 0/1 matrix dump with a header row naming the free variables."""
    n = len(sys.free_vars)
    lines = ["Y: " + " ".join(str(v) for v in sys.free_vars)]
    if sys.inconsistent:
        lines.append("INCONSISTENT")
    for row, cls in zip(sys.rows, sys.row_class):
        bits = " ".join(str(b) for b in row.coeff_list(n))
        lines.append(f"{cls} {row.pivot_var} | {bits} | {row.const}")
    return "\n".join(lines) + "\n"
