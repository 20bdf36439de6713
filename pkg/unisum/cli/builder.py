import numpy as np
from pydantic import ValidationError

from unisum.cli.models import (
    BorderVariantNode,
    DualNode,
    ExtendedSumNode,
    GeneratedTConormNode,
    GeneratedTNormNode,
    GeneratorNode,
    LukasiewiczNode,
    MaximumNode,
    MinimumNode,
    OperatorNode,
    OrdinalSumNode,
    OrdinalSumTConormNode,
    OrdinalSumTNormNode,
    ProductNode,
    RepresentableNode,
    SInternalNode,
    UMaxNode,
    UMinNode,
)
from unisum.extended_sum.evaluate import extended_sum_uninorm
from unisum.extended_sum.models import ChoiceAssignment, ExtendedOrdinalSumSpec, IntervalChoice
from unisum.lib.errors import SchemaError
from unisum.lib.logging import logger
from unisum.operators.generators import make_generator
from unisum.operators.models import Generator
from unisum.operators.tnorms import (
    dualize,
    generated_tconorm,
    generated_tnorm,
    lukasiewicz_tnorm,
    maximum,
    minimum,
    ordinal_sum_tconorm,
    ordinal_sum_tnorm,
    product,
)
from unisum.ordinal_sum.evaluate import ordinal_sum_uninorm
from unisum.ordinal_sum.models import OrdinalSumSpec, Summand
from unisum.uninorms.border import border_variant_handle
from unisum.uninorms.construct import make_representable, make_s_internal, make_u_max, make_u_min
from unisum.uninorms.models import InternalBoundary, OperatorHandle


def _generator(node: GeneratorNode) -> Generator:
    return make_generator(node.generator_kind, node.family, **node.params)


def _boundary(node: SInternalNode) -> InternalBoundary:
    e = node.e

    def reflection(x: float) -> float:
        return 1.0 - x

    def piecewise_linear(x: float) -> float:
        return float(np.interp(x, [0.0, e, 1.0], [1.0, e, 0.0]))

    v = reflection if node.curve == "reflection" else piecewise_linear
    return InternalBoundary(v=v, on_boundary_rule=node.rule)


def _ordinal_sum_spec(node: OrdinalSumNode) -> OrdinalSumSpec:
    summands = tuple(
        Summand(
            a=s.a,
            b=s.b,
            c=s.c,
            d=s.d,
            op=_build(s.op) if s.op is not None else None,
            character=s.character,
            v=s.v,
        )
        for s in node.summands
    )
    return OrdinalSumSpec(e=node.e, summands=summands)


def _assignments(choices) -> tuple:
    return tuple(
        ChoiceAssignment(point=c.point, choice=IntervalChoice(endpoint=c.endpoint, closed=c.closed)) for c in choices
    )


def _build(node: OperatorNode) -> OperatorHandle:
    match node:
        case MinimumNode():
            return minimum()
        case MaximumNode():
            return maximum()
        case ProductNode():
            return product()
        case LukasiewiczNode():
            return lukasiewicz_tnorm()
        case GeneratedTNormNode(generator=gen):
            return generated_tnorm(_generator(gen))
        case GeneratedTConormNode(generator=gen):
            return generated_tconorm(_generator(gen))
        case DualNode(of=inner):
            return dualize(_build(inner))
        case OrdinalSumTNormNode(summands=summands):
            return ordinal_sum_tnorm((s.lo, s.hi, _build(s.op)) for s in summands)
        case OrdinalSumTConormNode(summands=summands):
            return ordinal_sum_tconorm((s.lo, s.hi, _build(s.op)) for s in summands)
        case RepresentableNode(generator=gen, policy=policy):
            return make_representable(_generator(gen), policy)
        case UMinNode(tnorm=T, tconorm=C, e=e):
            return make_u_min(_build(T), _build(C), e)
        case UMaxNode(tnorm=T, tconorm=C, e=e):
            return make_u_max(_build(T), _build(C), e)
        case SInternalNode():
            return make_s_internal(_boundary(node))
        case OrdinalSumNode():
            return ordinal_sum_uninorm(_ordinal_sum_spec(node))
        case ExtendedSumNode(base=base, g=g, h=h):
            espec = ExtendedOrdinalSumSpec(base=_ordinal_sum_spec(base), g=_assignments(g), h=_assignments(h))
            return extended_sum_uninorm(espec)
        case BorderVariantNode(kind=kind, of=inner):
            return border_variant_handle(_build(inner), "star" if kind == "border-star" else "substar")
    raise SchemaError(f"Unsupported document node {type(node).__name__}")


def build(node: OperatorNode) -> OperatorHandle:
    """
    OperatorHandle for a document tree. A root marked blackbox is reduced to
    its evaluation callable and neutral element.
    """
    try:
        handle = _build(node)
    except ValidationError as e:
        # range violations on summands and choices are document errors, rule violations are not
        raise SchemaError(f"Document values out of range: {e.error_count()} error(s)\n{e}") from e

    logger.debug("Built operator", extra={"kind": node.kind, "operator": handle.name, "blackbox": node.blackbox})
    if node.blackbox:
        return OperatorHandle(eval=handle.eval, neutral=handle.neutral, name="blackbox", numeric=handle.numeric)
    return handle
