from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from unisum.constants import BINARY_GRID, BREAKPOINT_SNAP, JUMP_FACTOR
from unisum.lib.errors import ConstructionError, InconclusiveClassificationError
from unisum.lib.logging import logger
from unisum.lib.numeric import operator_table, unit_grid
from unisum.operators.models import ArchimedeanClass, CompositeClass
from unisum.uninorms.models import OperatorHandle, OperatorKind


def _annihilator(op: OperatorHandle) -> float:
    if op.kind == OperatorKind.TNORM:
        return 0.0
    if op.kind == OperatorKind.TCONORM:
        return 1.0
    raise ConstructionError(f"Classification needs a t-norm or t-conorm, got {op.kind.value} {op.name}")


def _distance_to_annihilator(op: OperatorHandle, grid: np.ndarray) -> np.ndarray:
    return np.abs(operator_table(op, grid) - _annihilator(op))


def _diagonal_deficit(op: OperatorHandle, x: float) -> float:
    # |op(x,x) - x| vanishes exactly at idempotents
    return abs(op(x, x) - x)


def find_interior_idempotent(op: OperatorHandle, grid_n: int = BINARY_GRID, tol: Optional[float] = None) -> Optional[float]:
    """
    Returns an idempotent of op inside (0,1), or None. Local minima of the
    diagonal deficit between grid samples are refined, so idempotents that
    fall between samples are still found.
    """
    tol = op.default_tol if tol is None else tol
    grid = unit_grid(grid_n, interior=True)
    deficits = [_diagonal_deficit(op, float(x)) for x in grid]

    for x, deficit in zip(grid, deficits):
        if deficit <= tol:
            return float(x)

    step = 1.0 / (grid_n - 1)
    for i in range(1, len(grid) - 1):
        if deficits[i] <= deficits[i - 1] and deficits[i] <= deficits[i + 1] and deficits[i] < step:
            result = minimize_scalar(
                lambda x: _diagonal_deficit(op, x),
                bounds=(float(grid[i - 1]), float(grid[i + 1])),
                method="bounded",
                options={"xatol": tol},
            )
            # the minimizer stops about 1e-8 short of a kinked minimum
            if result.fun <= max(tol, BREAKPOINT_SNAP):
                return float(result.x)
    return None


def classify_archimedean(op: OperatorHandle, grid_n: int = BINARY_GRID, tol: Optional[float] = None) -> ArchimedeanClass:
    tol = op.default_tol if tol is None else tol
    idempotent = find_interior_idempotent(op, grid_n, tol)
    if idempotent is not None:
        logger.debug("Found interior idempotent", extra={"op": op.name, "idempotent": idempotent})
        return ArchimedeanClass.NOT_ARCHIMEDEAN

    distances = _distance_to_annihilator(op, unit_grid(grid_n, interior=True))
    if np.any(distances <= tol):
        return ArchimedeanClass.NILPOTENT
    if distances.min() < JUMP_FACTOR * tol:
        raise InconclusiveClassificationError(
            f"{op.name}: interior values come within {distances.min():.3g} of the annihilator "
            f"without reaching it at grid {grid_n}"
        )
    return ArchimedeanClass.STRICT


def classify_c_strict(op: OperatorHandle, grid_n: int = BINARY_GRID, tol: Optional[float] = None) -> CompositeClass:
    """
    c-strict: op maps the open square into (0,1). Unlike classify_archimedean,
    ordinal sums are allowed, so only interior annihilation is checked.
    """
    tol = op.default_tol if tol is None else tol
    distances = _distance_to_annihilator(op, unit_grid(grid_n, interior=True))
    if np.any(distances <= tol):
        return CompositeClass.C_NILPOTENT
    if distances.min() < JUMP_FACTOR * tol:
        raise InconclusiveClassificationError(
            f"{op.name}: c-strict and c-nilpotent are indistinguishable at grid {grid_n}"
        )
    return CompositeClass.C_STRICT
