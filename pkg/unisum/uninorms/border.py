from typing import Literal, Optional, Tuple

import numpy as np

from unisum.constants import BINARY_GRID, TERNARY_GRID
from unisum.lib.logging import logger
from unisum.lib.numeric import operator_table, unit_grid
from unisum.uninorms.models import BorderVariantVerdict, OperatorHandle, OperatorKind

Variant = Literal["star", "substar"]


def _star_eval(U: OperatorHandle):
    def evaluate(x: float, y: float) -> float:
        # x <= y
        if y == 1.0:
            return 1.0
        if x == 0.0:
            return 0.0
        return U(x, y)

    return evaluate


def _substar_eval(U: OperatorHandle):
    def evaluate(x: float, y: float) -> float:
        if x == 0.0:
            return 0.0
        if y == 1.0:
            return 1.0
        return U(x, y)

    return evaluate


def border_variant_handle(U: OperatorHandle, variant: Variant) -> OperatorHandle:
    evaluate = _star_eval(U) if variant == "star" else _substar_eval(U)
    suffix = "*" if variant == "star" else "_*"
    return OperatorHandle(
        eval=evaluate,
        neutral=U.neutral,
        kind=OperatorKind.UNINORM,
        name=f"{U.name}{suffix}",
        numeric=U.numeric,
    )


def _interior_annihilation(
    U: OperatorHandle, grid_n: int, tol: float
) -> Tuple[Optional[Tuple[float, float]], Optional[Tuple[float, float]]]:
    """First interior pairs (in grid order) with U = 0 and with U = 1, if any."""
    grid = unit_grid(grid_n, interior=True)
    table = operator_table(U, grid)
    found = []
    for target in (0.0, 1.0):
        hits = np.argwhere(np.abs(table - target) <= tol)
        found.append((float(grid[hits[0][0]]), float(grid[hits[0][1]])) if len(hits) else None)
    return found[0], found[1]


def _verdict(
    variant: Variant,
    handle: OperatorHandle,
    valid: bool,
    reason: str,
    witness: Optional[Tuple[float, float, float]] = None,
) -> BorderVariantVerdict:
    logger.info(
        "Checked border variant",
        extra={"operator": handle.name, "variant": variant, "valid": valid, "reason": reason, "witness": witness},
    )
    return BorderVariantVerdict(variant=variant, handle=handle, valid=valid, reason=reason, witness=witness)


def _border_variant(
    U: OperatorHandle,
    variant: Variant,
    grid_n: int,
    ternary_n: int,
    tol: Optional[float],
    seed: int,
) -> BorderVariantVerdict:
    # imported here: analysis builds on uninorms
    from unisum.analysis.verify import check_associativity, search_associativity_witness

    tol = U.default_tol if tol is None else tol
    handle = border_variant_handle(U, variant)
    zero_pair, one_pair = _interior_annihilation(U, grid_n, tol)

    if zero_pair is None and one_pair is None:
        return _verdict(variant, handle, True, "no interior pair maps to {0, 1}")

    # U_* breaks on interior zeros through U_*(x1, x2, 1); U* on interior ones through U*(x1, x2, 0)
    if variant == "substar" and zero_pair is not None:
        return _verdict(variant, handle, False, "interior zero of U", (*zero_pair, 1.0))
    if variant == "star" and one_pair is not None:
        return _verdict(variant, handle, False, "interior one of U", (*one_pair, 0.0))

    # the remaining case is valid iff U is an ordinal sum of a t-norm (t-conorm) and a uninorm
    # on the open square, which is decided by associativity
    finding = check_associativity(handle, unit_grid(ternary_n), tol)
    if finding.passed:
        finding = search_associativity_witness(handle, seed=seed, tol=tol)
    if finding.passed:
        prefix = "t-norm" if variant == "star" else "t-conorm"
        return _verdict(variant, handle, True, f"ordinal sum of a {prefix} and a uninorm on the open square")
    return _verdict(variant, handle, False, "associativity fails", finding.witness)


def border_variant_star(
    U: OperatorHandle,
    grid_n: int = BINARY_GRID,
    ternary_n: int = TERNARY_GRID,
    tol: Optional[float] = None,
    seed: int = 0,
) -> BorderVariantVerdict:
    """U*: 1 when max(x,y) = 1, 0 when min(x,y) = 0 < max(x,y) < 1, U elsewhere."""
    return _border_variant(U, "star", grid_n, ternary_n, tol, seed)


def border_variant_substar(
    U: OperatorHandle,
    grid_n: int = BINARY_GRID,
    ternary_n: int = TERNARY_GRID,
    tol: Optional[float] = None,
    seed: int = 0,
) -> BorderVariantVerdict:
    """U_*: 0 when min(x,y) = 0, 1 when 0 < min(x,y) and max(x,y) = 1, U elsewhere."""
    return _border_variant(U, "substar", grid_n, ternary_n, tol, seed)
