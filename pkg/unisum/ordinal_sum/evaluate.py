from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from unisum.lib.errors import InvariantViolationError, SpecInvalidError
from unisum.lib.logging import logger
from unisum.lib.numeric import check_unit
from unisum.ordinal_sum.models import DerivedSets, OrdinalSumSpec, Summand, SummandShape
from unisum.ordinal_sum.transform import TransformedOperator
from unisum.uninorms.models import OperatorHandle, OperatorKind


def derive_B_C_n(spec: OrdinalSumSpec) -> Tuple[Tuple[float, ...], Tuple[float, ...], Dict[int, float]]:
    """B = {b_k} minus {a_k}, C = {c_k} minus {d_k}, n(b_k) = b_k if U_k(1,0) = 0 else c_k."""
    lowers = {s.a for s in spec.summands}
    uppers = {s.d for s in spec.summands}
    B = tuple(sorted({s.b for s in spec.summands} - lowers))
    C = tuple(sorted({s.c for s in spec.summands} - uppers))
    n = {k: (s.b if s.conjunctive else s.c) for k, s in enumerate(spec.summands) if s.b in B}
    return B, C, n


def _v_from_neighbours(spec: OrdinalSumSpec, k: int) -> Optional[float]:
    summand = spec.summands[k]
    candidates = [i for i, s in enumerate(spec.summands) if i != k and s.a == summand.b]
    if not candidates:
        return None

    # the summand occupying the corner (b_k, c_k) decides
    preferred = [i for i in candidates if spec.summands[i].d == summand.c] or candidates
    characters = {spec.summands[i].conjunctive for i in preferred}
    if len(characters) > 1:
        raise SpecInvalidError(
            f"v for {summand.label} is ambiguous: summands starting at {summand.b} disagree on U(1,0)",
            rule="v_k = c_k (b_k) when some U_i with a_i = b_k is disjunctive (conjunctive)",
        )
    return summand.b if characters.pop() else summand.c


def resolve_v(spec: OrdinalSumSpec, k: int) -> float:
    summand = spec.summands[k]
    if summand.b == summand.c:
        return summand.b

    v = _v_from_neighbours(spec, k)
    if v is None:
        B, C, n = derive_B_C_n(spec)
        in_B, in_C = summand.b in B, summand.c in C
        if in_B and in_C:
            v = n[k]
        elif in_B:
            v = summand.b
        elif in_C:
            v = summand.c
        elif summand.shape == SummandShape.LOWER:
            v = summand.b
        elif summand.shape == SummandShape.UPPER:
            v = summand.c
        else:
            raise SpecInvalidError(
                f"No rule determines v for {summand.label}",
                rule="v_k is fixed by a neighbouring summand or by membership of b_k in B and c_k in C",
            )

    if summand.v is not None and summand.v != v:
        raise SpecInvalidError(
            f"Pinned v={summand.v} for {summand.label} contradicts the resolved v={v}",
            rule="v_k rule chain",
        )
    return v


def derive_sets(spec: OrdinalSumSpec) -> DerivedSets:
    B, C, n = derive_B_C_n(spec)
    return DerivedSets(B=B, C=C, n=n, v=tuple(resolve_v(spec, k) for k in range(spec.size)))


class ResolvedOrdinalSum(BaseModel):
    """An ordinal-sum spec with its derived sets and conjugated summands worked out once."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    spec: OrdinalSumSpec
    derived: DerivedSets
    pieces: Tuple[Optional[TransformedOperator], ...]


@lru_cache(maxsize=256)
def resolve_ordinal_sum(spec: OrdinalSumSpec) -> ResolvedOrdinalSum:
    derived = derive_sets(spec)
    pieces: List[Optional[TransformedOperator]] = []
    for s, v in zip(spec.summands, derived.v):
        if s.shape == SummandShape.EMPTY:
            pieces.append(None)
        else:
            pieces.append(TransformedOperator(op=s.op, a=s.a, b=s.b, c=s.c, d=s.d, v=v))

    logger.debug(
        "Resolved ordinal sum",
        extra={"e": spec.e, "summands": spec.size, "B": derived.B, "C": derived.C, "v": derived.v},
    )
    return ResolvedOrdinalSum(spec=spec, derived=derived, pieces=tuple(pieces))


def _in_piece(s: Summand, x: float) -> bool:
    return s.a <= x < s.b or s.c < x <= s.d


def _in_band(s: Summand, x: float) -> bool:
    return s.b <= x <= s.c


def eval_resolved(resolved: ResolvedOrdinalSum, x: float, y: float) -> float:
    spec, derived = resolved.spec, resolved.derived
    if x == spec.e:
        return y
    if y == spec.e:
        return x

    for s, piece in zip(spec.summands, resolved.pieces):
        if piece is not None and _in_piece(s, x) and _in_piece(s, y):
            return piece(x, y)

    for s in spec.summands:
        if _in_band(s, y) and s.a <= x <= s.d and not _in_band(s, x):
            return x
        if _in_band(s, x) and s.a <= y <= s.d and not _in_band(s, y):
            return y

    for k, s in enumerate(spec.summands):
        if not (_in_band(s, x) and _in_band(s, y)):
            continue
        if s.b < x < s.c and s.b < y < s.c:
            continue
        in_B, in_C = s.b in derived.B, s.c in derived.C
        if in_B and in_C:
            if (x, y) in ((s.b, s.c), (s.c, s.b)):
                return derived.n[k]
            # ties on the anti-diagonal away from the corner fall to min
            return max(x, y) if x + y > s.b + s.c else min(x, y)
        if in_B and s.b in (x, y):
            return min(x, y)
        if in_C and s.c in (x, y):
            return max(x, y)

    raise InvariantViolationError(f"No ordinal-sum branch covers ({x}, {y})", witness=(x, y))


def eval_ordinal_sum_uninorm(spec: OrdinalSumSpec, x: float, y: float) -> float:
    check_unit(x, y)
    lo, hi = (x, y) if x <= y else (y, x)
    return eval_resolved(resolve_ordinal_sum(spec), lo, hi)


def ordinal_sum_uninorm(spec: OrdinalSumSpec, name: Optional[str] = None) -> OperatorHandle:
    resolved = resolve_ordinal_sum(spec)
    label = ", ".join(s.label for s in spec.summands)
    return OperatorHandle(
        eval=lambda x, y: eval_resolved(resolved, x, y),
        neutral=spec.e,
        kind=OperatorKind.UNINORM,
        name=name or f"ordinal-sum[{label}]^{spec.e}",
        numeric=any(s.op is not None and s.op.numeric for s in spec.summands),
    )


def classify_summand(summand: Summand) -> SummandShape:
    return summand.shape


def is_totally_employed(summand: Summand) -> bool:
    if summand.op is None:
        return False
    proper = summand.op.kind == OperatorKind.UNINORM and 0.0 < summand.op.neutral < 1.0
    shape = summand.shape
    return (
        (proper and shape == SummandShape.COMPLETE)
        or (summand.op.kind == OperatorKind.TNORM and shape == SummandShape.LOWER)
        or (summand.op.kind == OperatorKind.TCONORM and shape == SummandShape.UPPER)
    )
