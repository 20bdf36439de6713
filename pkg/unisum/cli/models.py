import json
from pathlib import Path
from typing import Annotated, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError

from unisum.lib.errors import SchemaError
from unisum.operators.models import GeneratorKind
from unisum.uninorms.models import AnnihilatorPolicy, BoundaryRule


class GeneratorNode(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    generator_kind: GeneratorKind
    family: str
    params: Dict[str, float] = Field(default_factory=dict)


class _Node(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    blackbox: bool = Field(
        default=False,
        description="On the root node: decompose sees only the evaluation callable and the neutral element",
    )


class MinimumNode(_Node):
    kind: Literal["minimum"] = "minimum"


class MaximumNode(_Node):
    kind: Literal["maximum"] = "maximum"


class ProductNode(_Node):
    kind: Literal["product"] = "product"


class LukasiewiczNode(_Node):
    kind: Literal["lukasiewicz"] = "lukasiewicz"


class GeneratedTNormNode(_Node):
    kind: Literal["generated-tnorm"] = "generated-tnorm"
    generator: GeneratorNode


class GeneratedTConormNode(_Node):
    kind: Literal["generated-tconorm"] = "generated-tconorm"
    generator: GeneratorNode


class DualNode(_Node):
    kind: Literal["dual"] = "dual"
    of: "OperatorNode"


class TSummandNode(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    lo: float
    hi: float
    op: "OperatorNode"


class OrdinalSumTNormNode(_Node):
    kind: Literal["ordinal-sum-tnorm"] = "ordinal-sum-tnorm"
    summands: List[TSummandNode]


class OrdinalSumTConormNode(_Node):
    kind: Literal["ordinal-sum-tconorm"] = "ordinal-sum-tconorm"
    summands: List[TSummandNode]


class RepresentableNode(_Node):
    kind: Literal["representable"] = "representable"
    generator: GeneratorNode
    policy: AnnihilatorPolicy = AnnihilatorPolicy.CONJUNCTIVE


class UMinNode(_Node):
    kind: Literal["u-min"] = "u-min"
    tnorm: "OperatorNode"
    tconorm: "OperatorNode"
    e: float = Field(..., gt=0.0, lt=1.0)


class UMaxNode(_Node):
    kind: Literal["u-max"] = "u-max"
    tnorm: "OperatorNode"
    tconorm: "OperatorNode"
    e: float = Field(..., gt=0.0, lt=1.0)


class SInternalNode(_Node):
    """
    s-internal uninorm with a named switching curve: "reflection" is
    v(x) = 1 - x, "piecewise-linear" joins (0,1), (e,e) and (1,0).
    """

    kind: Literal["s-internal"] = "s-internal"
    curve: Literal["reflection", "piecewise-linear"] = "reflection"
    e: float = Field(default=0.5, gt=0.0, lt=1.0, description="Fixed point of the piecewise-linear curve")
    rule: BoundaryRule = Field(default=BoundaryRule.TAKE_MIN, description="take-min or take-max on the curve")


class SummandNode(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    a: float
    b: float
    c: float
    d: float
    op: Optional["OperatorNode"] = None
    character: Optional[AnnihilatorPolicy] = None
    v: Optional[float] = None


class OrdinalSumNode(_Node):
    kind: Literal["ordinal-sum"] = "ordinal-sum"
    e: float
    summands: List[SummandNode]


class ChoiceNode(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    point: float
    endpoint: float
    closed: bool


class ExtendedSumNode(_Node):
    kind: Literal["extended-sum"] = "extended-sum"
    base: OrdinalSumNode
    g: List[ChoiceNode] = Field(default_factory=list)
    h: List[ChoiceNode] = Field(default_factory=list)


class BorderVariantNode(_Node):
    kind: Literal["border-star", "border-substar"]
    of: "OperatorNode"


OperatorNode = Annotated[
    Union[
        MinimumNode,
        MaximumNode,
        ProductNode,
        LukasiewiczNode,
        GeneratedTNormNode,
        GeneratedTConormNode,
        DualNode,
        OrdinalSumTNormNode,
        OrdinalSumTConormNode,
        RepresentableNode,
        UMinNode,
        UMaxNode,
        SInternalNode,
        OrdinalSumNode,
        ExtendedSumNode,
        BorderVariantNode,
    ],
    Field(discriminator="kind"),
]

for _model in (
    DualNode,
    TSummandNode,
    OrdinalSumTNormNode,
    OrdinalSumTConormNode,
    UMinNode,
    UMaxNode,
    SummandNode,
    OrdinalSumNode,
    ExtendedSumNode,
    BorderVariantNode,
):
    _model.model_rebuild()

document_adapter: TypeAdapter = TypeAdapter(OperatorNode)


def parse_document(data: Union[str, bytes, dict]) -> OperatorNode:
    try:
        if isinstance(data, dict):
            return document_adapter.validate_python(data)
        return document_adapter.validate_json(data)
    except ValidationError as e:
        raise SchemaError(f"Invalid operator document: {e.error_count()} error(s)\n{e}") from e


def load_document(path: Union[str, Path]) -> OperatorNode:
    text = Path(path).read_text(encoding="utf-8")
    return parse_document(text)


def dump_document(node: OperatorNode, path: Optional[Union[str, Path]] = None) -> str:
    text = json.dumps(document_adapter.dump_python(node, mode="json", exclude_defaults=False), indent=2)
    if path is not None:
        Path(path).write_text(text + "\n", encoding="utf-8")
    return text
