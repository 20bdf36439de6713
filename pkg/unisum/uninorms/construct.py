import math
from typing import Optional, Tuple

from unisum.lib.errors import ConstructionError, InvariantViolationError
from unisum.lib.logging import logger
from unisum.operators.models import Generator, GeneratorKind
from unisum.uninorms.models import (
    AnnihilatorPolicy,
    InternalBoundary,
    OperatorHandle,
    OperatorKind,
)


def make_representable(
    gen: Generator, policy: AnnihilatorPolicy = AnnihilatorPolicy.CONJUNCTIVE
) -> OperatorHandle:
    """
    U(x,y) = f^-1(f(x) + f(y)) for a bipolar generator f. The pair {0,1}
    gives -inf + inf, so its value is the policy: 0 conjunctive, 1 disjunctive.
    """
    if gen.kind != GeneratorKind.BIPOLAR:
        raise ConstructionError(f"Representable uninorms need a bipolar generator, got {gen.kind.value}")
    policy = AnnihilatorPolicy(policy)
    corner = 0.0 if policy == AnnihilatorPolicy.CONJUNCTIVE else 1.0

    def evaluate(x: float, y: float) -> float:
        fx, fy = gen(x), gen(y)
        if math.isinf(fx) and math.isinf(fy) and fx != fy:
            return corner
        return gen.inverse(fx + fy)

    return OperatorHandle(
        eval=evaluate,
        neutral=gen.inverse(0.0),
        kind=OperatorKind.UNINORM,
        annihilator_policy=policy,
        name=f"representable[{gen.family}, {policy.value}]",
        numeric=not gen.closed_form,
    )


def _require_kind(op: OperatorHandle, kind: OperatorKind) -> None:
    if op.kind != kind:
        raise ConstructionError(f"Expected a {kind.value} handle, got {op.kind.value} {op.name}")


def _banded(T: OperatorHandle, C: OperatorHandle, e: float, x: float, y: float) -> Optional[float]:
    # x <= y; None means the point lies in a cross band
    if y <= e:
        return e * T(x / e, y / e) if e > 0.0 else 0.0
    if x >= e:
        return e + (1.0 - e) * C((x - e) / (1.0 - e), (y - e) / (1.0 - e))
    return None


def make_u_min(T: OperatorHandle, C: OperatorHandle, e: float) -> OperatorHandle:
    _require_kind(T, OperatorKind.TNORM)
    _require_kind(C, OperatorKind.TCONORM)

    def evaluate(x: float, y: float) -> float:
        value = _banded(T, C, e, x, y)
        return min(x, y) if value is None else value

    return OperatorHandle(
        eval=evaluate,
        neutral=e,
        annihilator_policy=AnnihilatorPolicy.CONJUNCTIVE,
        name=f"u-min[{T.name}, {C.name}, e={e}]",
        numeric=T.numeric or C.numeric,
    )


def make_u_max(T: OperatorHandle, C: OperatorHandle, e: float) -> OperatorHandle:
    _require_kind(T, OperatorKind.TNORM)
    _require_kind(C, OperatorKind.TCONORM)

    def evaluate(x: float, y: float) -> float:
        value = _banded(T, C, e, x, y)
        return max(x, y) if value is None else value

    return OperatorHandle(
        eval=evaluate,
        neutral=e,
        annihilator_policy=AnnihilatorPolicy.DISJUNCTIVE,
        name=f"u-max[{T.name}, {C.name}, e={e}]",
        numeric=T.numeric or C.numeric,
    )


def make_s_internal(boundary: InternalBoundary) -> OperatorHandle:
    """min below the curve y = v(x), max above it, the boundary rule on it."""

    def evaluate(x: float, y: float) -> float:
        level = boundary.v(x)
        if y < level - boundary.band:
            return min(x, y)
        if y > level + boundary.band:
            return max(x, y)
        return boundary.on_curve(x, y)

    e = boundary.fixed_point()
    logger.debug("Built s-internal uninorm", extra={"neutral": e, "rule": boundary.on_boundary_rule.value})
    return OperatorHandle(eval=evaluate, neutral=e, name=f"s-internal[{boundary.on_boundary_rule.value}]")


def underlying_tnorm(U: OperatorHandle) -> OperatorHandle:
    """T_U(x,y) = U(ex, ey) / e"""
    e = U.neutral
    if e == 0.0:
        raise ConstructionError(f"{U.name} has neutral 0, so its underlying t-norm is trivial")
    if U.kind == OperatorKind.TNORM:
        return U
    return OperatorHandle(
        eval=lambda x, y: U(e * x, e * y) / e,
        neutral=1.0,
        kind=OperatorKind.TNORM,
        name=f"T[{U.name}]",
        numeric=U.numeric,
    )


def underlying_tconorm(U: OperatorHandle) -> OperatorHandle:
    """C_U(x,y) = (U(e + (1-e)x, e + (1-e)y) - e) / (1-e)"""
    e = U.neutral
    if e == 1.0:
        raise ConstructionError(f"{U.name} has neutral 1, so its underlying t-conorm is trivial")
    if U.kind == OperatorKind.TCONORM:
        return U
    width = 1.0 - e
    return OperatorHandle(
        eval=lambda x, y: (U(e + width * x, e + width * y) - e) / width,
        neutral=0.0,
        kind=OperatorKind.TCONORM,
        name=f"C[{U.name}]",
        numeric=U.numeric,
    )


def underlying_ops(U: OperatorHandle) -> Tuple[OperatorHandle, OperatorHandle]:
    return underlying_tnorm(U), underlying_tconorm(U)


def classify_conjunctive(U: OperatorHandle, tol: Optional[float] = None) -> AnnihilatorPolicy:
    tol = U.default_tol if tol is None else tol
    value = U(1.0, 0.0)
    if abs(value) <= tol:
        return AnnihilatorPolicy.CONJUNCTIVE
    if abs(value - 1.0) <= tol:
        return AnnihilatorPolicy.DISJUNCTIVE
    raise InvariantViolationError(f"{U.name}: U(1,0) = {value} is neither 0 nor 1", witness=(1.0, 0.0))
