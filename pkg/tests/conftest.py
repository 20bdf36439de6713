import json
from typing import Callable, Dict, Optional

import pytest

from unisum.extended_sum.evaluate import extended_sum_uninorm
from unisum.extended_sum.models import ChoiceAssignment, ExtendedOrdinalSumSpec, IntervalChoice
from unisum.operators.generators import make_generator
from unisum.operators.models import GeneratorKind
from unisum.operators.tnorms import dualize, lukasiewicz_tnorm, product
from unisum.ordinal_sum.evaluate import ordinal_sum_uninorm
from unisum.ordinal_sum.models import OrdinalSumSpec, Summand
from unisum.uninorms.construct import make_representable, make_s_internal, make_u_max, make_u_min
from unisum.uninorms.models import AnnihilatorPolicy, InternalBoundary, OperatorHandle

E = 0.5
B = 0.75

# the four admissible values of g(0) in the three-summand example with G = {0}
G0_CHOICES: Dict[str, IntervalChoice] = {
    "closed-e": IntervalChoice(endpoint=E, closed=True),
    "open-b": IntervalChoice(endpoint=B, closed=False),
    "closed-b": IntervalChoice(endpoint=B, closed=True),
    "closed-1": IntervalChoice(endpoint=1.0, closed=True),
}


def logistic(policy: AnnihilatorPolicy = AnnihilatorPolicy.CONJUNCTIVE) -> OperatorHandle:
    return make_representable(make_generator(GeneratorKind.BIPOLAR, "logistic"), policy)


def probabilistic_sum() -> OperatorHandle:
    return dualize(product())


def bounded_sum() -> OperatorHandle:
    return dualize(lukasiewicz_tnorm())


def g_zero_base() -> OrdinalSumSpec:
    """(<0,e,e,e,product>, <0,0,e,b,probabilistic sum>, <0,0,b,1,bounded sum>)^e"""
    return OrdinalSumSpec(
        e=E,
        summands=(
            Summand(a=0.0, b=E, c=E, d=E, op=product()),
            Summand(a=0.0, b=0.0, c=E, d=B, op=probabilistic_sum()),
            Summand(a=0.0, b=0.0, c=B, d=1.0, op=bounded_sum()),
        ),
    )


def g_zero_extended(choice: Optional[IntervalChoice] = None) -> ExtendedOrdinalSumSpec:
    g = () if choice is None else (ChoiceAssignment(point=0.0, choice=choice),)
    return ExtendedOrdinalSumSpec(base=g_zero_base(), g=g)


def three_block_spec() -> OrdinalSumSpec:
    """(<1/4,1/2,1/2,3/4,logistic>, <0,1/4,3/4,3/4,product>, <0,0,3/4,1,probabilistic sum>)^(1/2)"""
    return OrdinalSumSpec(
        e=0.5,
        summands=(
            Summand(a=0.25, b=0.5, c=0.5, d=0.75, op=logistic()),
            Summand(a=0.0, b=0.25, c=0.75, d=0.75, op=product()),
            Summand(a=0.0, b=0.0, c=0.75, d=1.0, op=probabilistic_sum()),
        ),
    )


def reflection_internal() -> OperatorHandle:
    return make_s_internal(InternalBoundary(v=lambda x: 1.0 - x))


CONSTRUCTIONS: Dict[str, Callable[[], OperatorHandle]] = {
    "product": product,
    "lukasiewicz": lukasiewicz_tnorm,
    "logistic-conjunctive": lambda: logistic(AnnihilatorPolicy.CONJUNCTIVE),
    "logistic-disjunctive": lambda: logistic(AnnihilatorPolicy.DISJUNCTIVE),
    "u-min": lambda: make_u_min(product(), probabilistic_sum(), E),
    "u-max": lambda: make_u_max(product(), probabilistic_sum(), E),
    "s-internal": reflection_internal,
    **{
        f"g-zero-{name}": (lambda choice=choice: extended_sum_uninorm(g_zero_extended(choice)))
        for name, choice in G0_CHOICES.items()
    },
    "three-block": lambda: ordinal_sum_uninorm(three_block_spec()),
}


@pytest.fixture(params=sorted(CONSTRUCTIONS))
def construction(request) -> OperatorHandle:
    return CONSTRUCTIONS[request.param]()


@pytest.fixture
def three_block() -> OperatorHandle:
    return ordinal_sum_uninorm(three_block_spec())


@pytest.fixture
def write_document(tmp_path):
    def write(document: dict, name: str = "spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return str(path)

    return write
