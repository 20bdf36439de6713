from typing import Iterable, List, Tuple

from unisum.lib.errors import ConstructionError
from unisum.lib.numeric import check_unit
from unisum.operators.models import (
    Generator,
    GeneratorKind,
    OrdinalSummand,
    TConormSummandList,
    TNormSummandList,
)
from unisum.uninorms.models import OperatorHandle, OperatorKind


def _require_generator(gen: Generator, kind: GeneratorKind) -> None:
    if gen.kind != kind:
        raise ConstructionError(f"Expected a {kind.value} generator, got {gen.kind.value} ({gen.family})")


def eval_generated_tnorm(gen: Generator, x: float, y: float) -> float:
    """T(x,y) = t^-1(min(t(0), t(x) + t(y)))"""
    _require_generator(gen, GeneratorKind.TNORM)
    check_unit(x, y)
    at_zero, _ = gen.endpoint_values
    return gen.inverse(min(at_zero, gen(x) + gen(y)))


def eval_generated_tconorm(gen: Generator, x: float, y: float) -> float:
    """C(x,y) = c^-1(min(c(1), c(x) + c(y)))"""
    _require_generator(gen, GeneratorKind.TCONORM)
    check_unit(x, y)
    _, at_one = gen.endpoint_values
    return gen.inverse(min(at_one, gen(x) + gen(y)))


def generated_tnorm(gen: Generator) -> OperatorHandle:
    _require_generator(gen, GeneratorKind.TNORM)
    return OperatorHandle(
        eval=lambda x, y: eval_generated_tnorm(gen, x, y),
        neutral=1.0,
        kind=OperatorKind.TNORM,
        name=f"tnorm[{gen.family}]",
        numeric=not gen.closed_form,
    )


def generated_tconorm(gen: Generator) -> OperatorHandle:
    _require_generator(gen, GeneratorKind.TCONORM)
    return OperatorHandle(
        eval=lambda x, y: eval_generated_tconorm(gen, x, y),
        neutral=0.0,
        kind=OperatorKind.TCONORM,
        name=f"tconorm[{gen.family}]",
        numeric=not gen.closed_form,
    )


def minimum() -> OperatorHandle:
    return OperatorHandle(eval=min, neutral=1.0, kind=OperatorKind.TNORM, name="min")


def maximum() -> OperatorHandle:
    return OperatorHandle(eval=max, neutral=0.0, kind=OperatorKind.TCONORM, name="max")


def product() -> OperatorHandle:
    return OperatorHandle(eval=lambda x, y: x * y, neutral=1.0, kind=OperatorKind.TNORM, name="product")


def lukasiewicz_tnorm() -> OperatorHandle:
    return OperatorHandle(
        eval=lambda x, y: max(0.0, x + y - 1.0),
        neutral=1.0,
        kind=OperatorKind.TNORM,
        name="lukasiewicz",
    )


def dualize(op: OperatorHandle) -> OperatorHandle:
    """
    C(x,y) = 1 - T(1-x, 1-y). Works in both directions, so dualize(dualize(T))
    evaluates like T.
    """
    if op.kind == OperatorKind.TNORM:
        kind, neutral = OperatorKind.TCONORM, 0.0
    elif op.kind == OperatorKind.TCONORM:
        kind, neutral = OperatorKind.TNORM, 1.0
    else:
        raise ConstructionError(f"Only t-norms and t-conorms can be dualized, got {op.kind.value} {op.name}")

    return OperatorHandle(
        eval=lambda x, y: 1.0 - op(1.0 - x, 1.0 - y),
        neutral=neutral,
        kind=kind,
        name=f"dual[{op.name}]",
        numeric=op.numeric,
    )


def _rescaled(entry: OrdinalSummand, x: float, y: float) -> float:
    width = entry.hi - entry.lo
    return entry.lo + width * entry.op((x - entry.lo) / width, (y - entry.lo) / width)


def eval_ordinal_sum_tnorm(summands: TNormSummandList, x: float, y: float) -> float:
    check_unit(x, y)
    for entry in summands.entries:
        if entry.lo <= x < entry.hi and entry.lo <= y < entry.hi:
            return _rescaled(entry, x, y)
    return min(x, y)


def eval_ordinal_sum_tconorm(summands: TConormSummandList, x: float, y: float) -> float:
    check_unit(x, y)
    for entry in summands.entries:
        if entry.lo < x <= entry.hi and entry.lo < y <= entry.hi:
            return _rescaled(entry, x, y)
    return max(x, y)


def _summand_entries(summands: Iterable[Tuple[float, float, OperatorHandle]]) -> List[OrdinalSummand]:
    return [OrdinalSummand(lo=lo, hi=hi, op=op) for lo, hi, op in summands]


def ordinal_sum_tnorm(summands: Iterable[Tuple[float, float, OperatorHandle]]) -> OperatorHandle:
    summand_list = TNormSummandList(entries=_summand_entries(summands))
    label = ", ".join(f"<{e.lo}, {e.hi}, {e.op.name}>" for e in summand_list.entries)
    return OperatorHandle(
        eval=lambda x, y: eval_ordinal_sum_tnorm(summand_list, x, y),
        neutral=1.0,
        kind=OperatorKind.TNORM,
        name=f"ordinal-sum[{label}]",
        numeric=any(e.op.numeric for e in summand_list.entries),
    )


def ordinal_sum_tconorm(summands: Iterable[Tuple[float, float, OperatorHandle]]) -> OperatorHandle:
    summand_list = TConormSummandList(entries=_summand_entries(summands))
    label = ", ".join(f"<{e.lo}, {e.hi}, {e.op.name}>" for e in summand_list.entries)
    return OperatorHandle(
        eval=lambda x, y: eval_ordinal_sum_tconorm(summand_list, x, y),
        neutral=0.0,
        kind=OperatorKind.TCONORM,
        name=f"ordinal-sum[{label}]",
        numeric=any(e.op.numeric for e in summand_list.entries),
    )
