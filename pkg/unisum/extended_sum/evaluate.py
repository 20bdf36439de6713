from functools import lru_cache
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from unisum.constants import BINARY_GRID
from unisum.extended_sum.choices import compute_choice_families
from unisum.extended_sum.models import (
    ChoiceFamilies,
    DiffPoint,
    ExtendedOrdinalSumSpec,
    IntervalChoice,
)
from unisum.lib.errors import InvalidChoiceError, InvariantViolationError
from unisum.lib.logging import logger
from unisum.lib.numeric import check_unit, unit_grid
from unisum.ordinal_sum.evaluate import ResolvedOrdinalSum, eval_resolved, resolve_ordinal_sum
from unisum.uninorms.models import OperatorHandle, OperatorKind

# |U + V - (x + y)| on every point where the sums differ
COMPLEMENT_TOL = 1e-12


class ResolvedExtendedSum(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    base: ResolvedOrdinalSum
    families: ChoiceFamilies
    g: Dict[float, IntervalChoice]
    h: Dict[float, IntervalChoice]


def _complete_choices(
    assigned: Dict[float, IntervalChoice], points: tuple, families: ChoiceFamilies, name: str
) -> Dict[float, IntervalChoice]:
    for point in assigned:
        if point not in points:
            raise InvalidChoiceError(f"{name} is defined at {point}, which is not in {name.upper()} = {points}")

    choices = {}
    for point in points:
        family = families.row(point)
        choices[point] = family.check(assigned[point]) if point in assigned else family.default
    return choices


@lru_cache(maxsize=64)
def resolve_extended_sum(espec: ExtendedOrdinalSumSpec) -> ResolvedExtendedSum:
    families = compute_choice_families(espec.base)
    return ResolvedExtendedSum(
        base=resolve_ordinal_sum(espec.base),
        families=families,
        g=_complete_choices(espec.g_map, families.G, families, "g"),
        h=_complete_choices(espec.h_map, families.H, families, "h"),
    )


def _row_rule(choices: Dict[float, IntervalChoice], x: float, y: float) -> Optional[float]:
    if x in choices:
        return min(x, y) if choices[x].contains(y) else max(x, y)
    if y in choices:
        return min(x, y) if choices[y].contains(x) else max(x, y)
    return None


def eval_resolved_extended(resolved: ResolvedExtendedSum, x: float, y: float) -> float:
    e = resolved.base.spec.e
    if x == e:
        return y
    if y == e:
        return x
    for choices in (resolved.g, resolved.h):
        value = _row_rule(choices, x, y)
        if value is not None:
            return value
    return eval_resolved(resolved.base, x, y)


def eval_extended_sum(espec: ExtendedOrdinalSumSpec, x: float, y: float) -> float:
    check_unit(x, y)
    lo, hi = (x, y) if x <= y else (y, x)
    return eval_resolved_extended(resolve_extended_sum(espec), lo, hi)


def extended_sum_uninorm(espec: ExtendedOrdinalSumSpec, name: Optional[str] = None) -> OperatorHandle:
    resolved = resolve_extended_sum(espec)
    base = espec.base
    choices = ", ".join(
        [f"g({p})={c}" for p, c in resolved.g.items()] + [f"h({p})={c}" for p, c in resolved.h.items()]
    )
    return OperatorHandle(
        eval=lambda x, y: eval_resolved_extended(resolved, x, y),
        neutral=base.e,
        kind=OperatorKind.UNINORM,
        name=name or f"extended-sum[{', '.join(s.label for s in base.summands)}; {choices}]^{base.e}",
        numeric=any(s.op is not None and s.op.numeric for s in base.summands),
    )


def diff_extended_vs_base(espec: ExtendedOrdinalSumSpec, grid_n: int = BINARY_GRID) -> List[DiffPoint]:
    """
    All sampled points where the extended sum differs from its base. The grid
    is augmented with the G and H points and the choice endpoints so their
    rows are always sampled.
    """
    resolved = resolve_extended_sum(espec)
    rows = set(resolved.g) | set(resolved.h)
    endpoints = {c.endpoint for c in list(resolved.g.values()) + list(resolved.h.values())}
    grid = np.union1d(unit_grid(grid_n), sorted(rows | endpoints))

    diffs: List[DiffPoint] = []
    for x in grid:
        for y in grid:
            x, y = float(x), float(y)
            lo, hi = (x, y) if x <= y else (y, x)
            base = eval_resolved(resolved.base, lo, hi)
            extended = eval_resolved_extended(resolved, lo, hi)
            if base == extended:
                continue
            point = DiffPoint(x=x, y=y, base=base, extended=extended)
            if x not in rows and y not in rows:
                raise InvariantViolationError(
                    f"Extended sum differs from its base off the G/H rows at ({x}, {y})", witness=(x, y)
                )
            if point.complement_error > COMPLEMENT_TOL:
                raise InvariantViolationError(
                    f"U + V != x + y at ({x}, {y}): {base} + {extended}", witness=(x, y)
                )
            diffs.append(point)

    logger.info("Compared extended sum with its base", extra={"grid": grid_n, "differences": len(diffs)})
    return diffs
