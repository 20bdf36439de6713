from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from unisum.analysis.models import IdempotentSet
from unisum.constants import BREAKPOINT_SNAP, DECOMPOSE_GRID, JUMP_BRACKET, JUMP_FACTOR
from unisum.lib.errors import NotInClassError
from unisum.lib.logging import logger
from unisum.lib.numeric import locate_switch, unit_grid
from unisum.uninorms.models import OperatorHandle

# adjacent section samples further apart than this are bracketed and checked for a jump
SCAN_STEP = 0.05


def crossing(U: OperatorHandle, x: float) -> float:
    """sup {z : U(x,z) < e}, with sup of the empty set taken as 0."""
    e = U.neutral

    def below(z: float) -> bool:
        return U(x, z) < e

    if below(1.0):
        return 1.0
    if not below(0.0):
        return 0.0
    return locate_switch(below, 0.0, 1.0)


def _jump_at(section, z: float, tol: float) -> float:
    """
    Size of the jump of a monotone section at z, or 0.0. A steep continuous
    slope loses most of its change when the bracket shrinks a hundredfold, a
    jump keeps it.
    """

    def change(delta: float) -> float:
        return section(min(1.0, z + delta)) - section(max(0.0, z - delta))

    narrow, wide = change(JUMP_BRACKET), change(100.0 * JUMP_BRACKET)
    if narrow > JUMP_FACTOR * tol and narrow > 0.5 * wide:
        return narrow
    return 0.0


def _scan_jumps(section, grid: np.ndarray, tol: float) -> List[float]:
    values = [section(float(z)) for z in grid]
    jumps = []
    for lo, hi, v_lo, v_hi in zip(grid, grid[1:], values, values[1:]):
        if v_hi - v_lo <= SCAN_STEP:
            continue
        level = 0.5 * (v_lo + v_hi)
        z = locate_switch(lambda s: section(s) > level, float(lo), float(hi))
        if _jump_at(section, z, tol) > 0.0:
            jumps.append(z)
    return jumps


def section_discontinuity(
    U: OperatorHandle, x: float, grid_n: int = DECOMPOSE_GRID, tol: Optional[float] = None
) -> Optional[float]:
    """
    Interior jump of the section u_x(z) = U(x, z), or None when u_x is
    continuous on (0,1) at this resolution.

    In a uninorm with continuous underlying operations the only possible jump
    sits where u_x crosses e, so the crossing is located by bisection and then
    tested for a jump. A coarse scan of the section backs this up and raises
    NotInClassError if it finds further jumps.
    """
    tol = U.default_tol if tol is None else tol
    section = U.section(x)

    found = []
    z = crossing(U, x)
    if 0.0 < z < 1.0 and _jump_at(section, z, tol) > 0.0:
        found.append(z)

    for other in _scan_jumps(section, unit_grid(grid_n), tol):
        if not 0.0 < other < 1.0:
            continue
        if all(abs(other - seen) > BREAKPOINT_SNAP for seen in found):
            found.append(other)

    if len(found) > 1:
        raise NotInClassError(
            f"Section of {U.name} at x={x} has {len(found)} jumps: {sorted(found)}", witness=(x, *sorted(found))
        )
    return found[0] if found else None


def _deficit(U: OperatorHandle, x: float) -> float:
    return abs(U(x, x) - x)


def _refine_edge(U: OperatorHandle, inside: float, outside: float, tol: float) -> float:
    # boundary of the idempotent set between an idempotent and a non-idempotent sample
    edge = locate_switch(lambda x: _deficit(U, x) <= tol, inside, outside)
    return inside if abs(edge - inside) <= BREAKPOINT_SNAP else edge


def _isolated_idempotents(U: OperatorHandle, grid: np.ndarray, deficits: np.ndarray, tol: float) -> List[float]:
    """Idempotents strictly between two non-idempotent samples, from local minima of the deficit."""
    step = float(grid[1] - grid[0])
    found = []
    for i in range(1, len(grid) - 1):
        if deficits[i] <= tol or deficits[i] >= step:
            continue
        if deficits[i] <= deficits[i - 1] and deficits[i] <= deficits[i + 1]:
            result = minimize_scalar(
                lambda x: _deficit(U, x),
                bounds=(float(grid[i - 1]), float(grid[i + 1])),
                method="bounded",
                options={"xatol": tol},
            )
            # the minimizer stops about 1e-8 short of a kinked minimum
            if result.fun <= max(tol, BREAKPOINT_SNAP):
                found.append(float(result.x))
    return found


def find_idempotents(U: OperatorHandle, grid_n: int = DECOMPOSE_GRID, tol: Optional[float] = None) -> IdempotentSet:
    tol = U.default_tol if tol is None else tol
    grid = np.union1d(unit_grid(grid_n), [U.neutral])
    deficits = np.array([_deficit(U, float(x)) for x in grid])
    idempotent = deficits <= tol

    intervals: List[Tuple[float, float]] = []
    i = 0
    while i < len(grid):
        if not idempotent[i]:
            i += 1
            continue
        j = i
        while j + 1 < len(grid) and idempotent[j + 1]:
            j += 1
        lo, hi = float(grid[i]), float(grid[j])
        if i > 0:
            lo = _refine_edge(U, lo, float(grid[i - 1]), tol)
        if j + 1 < len(grid):
            hi = _refine_edge(U, hi, float(grid[j + 1]), tol)
        intervals.append((lo, hi))
        i = j + 1

    intervals.extend((x, x) for x in _isolated_idempotents(U, grid, deficits, tol))
    intervals.sort()
    gaps = tuple((left[1], right[0]) for left, right in zip(intervals, intervals[1:]) if left[1] < right[0])

    logger.debug("Found idempotents", extra={"operator": U.name, "intervals": intervals, "gaps": gaps})
    return IdempotentSet(intervals=tuple(intervals), gaps=gaps)
