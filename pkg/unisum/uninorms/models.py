from enum import Enum
from typing import Callable, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from unisum.constants import AXIOM_TOL, BINARY_GRID, NUMERIC_AXIOM_TOL
from unisum.lib.errors import ConstructionError
from unisum.lib.numeric import check_unit, clamp_unit, invert_monotone, unit_grid

BinaryMap = Callable[[float, float], float]


class OperatorKind(str, Enum):
    TNORM = "tnorm"
    TCONORM = "tconorm"
    UNINORM = "uninorm"


class AnnihilatorPolicy(str, Enum):
    CONJUNCTIVE = "conjunctive"
    DISJUNCTIVE = "disjunctive"


class OperatorHandle(BaseModel):
    """
    Black-box binary operation on the unit square with a declared neutral
    element. Every construction in the package returns one of these.

    Calls are routed through a single evaluation path: the neutral element is
    answered definitionally and the remaining arguments are ordered before the
    underlying map is evaluated, so op(x, y) and op(y, x) are bit-identical.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    eval: BinaryMap = Field(..., description="Binary map on [0,1]^2")
    neutral: float = Field(..., ge=0.0, le=1.0, description="Neutral element e")
    kind: OperatorKind = Field(default=OperatorKind.UNINORM)
    annihilator_policy: Optional[AnnihilatorPolicy] = Field(
        default=None,
        description="Value at the undefined pair {0,1} for representable and bipolar constructions",
    )
    name: str = Field(default="operator", description="Human readable label")
    numeric: bool = Field(
        default=False,
        description="True when evaluation involves numeric inversion (looser axiom tolerance)",
    )

    @model_validator(mode="after")
    def check_kind_neutral(self) -> "OperatorHandle":
        if self.kind == OperatorKind.TNORM and self.neutral != 1.0:
            raise ConstructionError(f"t-norm {self.name} must have neutral 1, got {self.neutral}")
        if self.kind == OperatorKind.TCONORM and self.neutral != 0.0:
            raise ConstructionError(f"t-conorm {self.name} must have neutral 0, got {self.neutral}")
        return self

    def __call__(self, x: float, y: float) -> float:
        check_unit(x, y)
        if x == self.neutral:
            return y
        if y == self.neutral:
            return x
        lo, hi = (x, y) if x <= y else (y, x)
        return clamp_unit(self.eval(lo, hi))

    def section(self, x: float) -> Callable[[float], float]:
        """The section u_x(z) = U(x, z)."""
        return lambda z: self(x, z)

    @property
    def default_tol(self) -> float:
        return NUMERIC_AXIOM_TOL if self.numeric else AXIOM_TOL

    def renamed(self, name: str) -> "OperatorHandle":
        return self.model_copy(update={"name": name})


class BoundaryRule(str, Enum):
    TAKE_MIN = "take-min"
    TAKE_MAX = "take-max"
    CUSTOM = "custom"


class InternalBoundary(BaseModel):
    """Switching curve v of an s-internal uninorm: min below the curve, max above."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    v: Callable[[float], float] = Field(
        ..., description="Continuous strictly decreasing map [0,1] -> [0,1]"
    )
    on_boundary_rule: BoundaryRule = Field(default=BoundaryRule.TAKE_MIN)
    custom: Optional[BinaryMap] = Field(
        default=None,
        description="Value on the curve y = v(x) when the rule is custom; must return x or y",
    )
    band: float = Field(
        default=0.0,
        ge=0.0,
        description="Half-width around the curve where the boundary rule applies; 0 for an exact curve",
    )

    @model_validator(mode="after")
    def check_decreasing(self) -> "InternalBoundary":
        values = [self.v(float(x)) for x in unit_grid(BINARY_GRID)]
        for left, right in zip(values, values[1:]):
            if not right < left:
                raise ConstructionError(
                    "Boundary v must be strictly decreasing on [0,1]"
                )
        if min(values) < 0.0 or max(values) > 1.0:
            raise ConstructionError("Boundary v must map [0,1] into [0,1]")
        if self.on_boundary_rule == BoundaryRule.CUSTOM and self.custom is None:
            raise ConstructionError("Custom boundary rule requires a custom map")
        return self

    def fixed_point(self) -> float:
        return invert_monotone(lambda x: self.v(x) - x, 0.0, increasing=False)

    def on_curve(self, x: float, y: float) -> float:
        if self.on_boundary_rule == BoundaryRule.TAKE_MIN:
            return min(x, y)
        if self.on_boundary_rule == BoundaryRule.TAKE_MAX:
            return max(x, y)
        return self.custom(x, y)


class BorderVariantVerdict(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    variant: Literal["star", "substar"]
    handle: OperatorHandle
    valid: bool
    reason: str
    witness: Optional[Tuple[float, float, float]] = Field(
        default=None,
        description="Triple (x1, x2, z) with op(op(x1, x2), z) != op(x1, op(x2, z))",
    )
