from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from unisum.lib.errors import ConstructionError, DomainError
from unisum.lib.numeric import check_unit
from unisum.uninorms.models import OperatorHandle


def transform_point(a: float, b: float, c: float, d: float, e: float, v: float, x: float) -> float:
    """
    Piecewise-linear map of [0,1] onto [a,b) u {v} u (c,d]: [0,e) goes
    linearly to [a,b), e to v, (e,1] linearly to (c,d]. With a = b the lower
    branch collapses onto a.
    """
    check_unit(x)
    if x < e:
        return (b - a) * x / e + a
    if x == e:
        return v
    return d - (1.0 - x) * (d - c) / (1.0 - e)


def inverse_transform_point(a: float, b: float, c: float, d: float, e: float, v: float, y: float) -> float:
    if y == v:
        return e
    if a <= y < b:
        return (y - a) * e / (b - a)
    if c < y <= d:
        return 1.0 - (d - y) * (1.0 - e) / (d - c)
    raise DomainError(f"{y} is outside the support [{a}, {b}) u {{{v}}} u ({c}, {d}]")


class TransformedOperator(BaseModel):
    """U carried onto ([a,b) u {v} u (c,d])^2 by conjugation with the transformation."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    op: OperatorHandle
    a: float = Field(..., ge=0.0, le=1.0)
    b: float = Field(..., ge=0.0, le=1.0)
    c: float = Field(..., ge=0.0, le=1.0)
    d: float = Field(..., ge=0.0, le=1.0)
    v: float = Field(..., ge=0.0, le=1.0)

    @model_validator(mode="after")
    def check_parameters(self) -> "TransformedOperator":
        if not (self.a <= self.b <= self.v <= self.c <= self.d):
            raise ConstructionError(
                f"Transformation needs a <= b <= v <= c <= d, got "
                f"({self.a}, {self.b}, {self.v}, {self.c}, {self.d})"
            )
        return self

    @property
    def parameters(self) -> Tuple[float, float, float, float, float, float]:
        return self.a, self.b, self.c, self.d, self.op.neutral, self.v

    def in_support(self, x: float) -> bool:
        return x == self.v or self.a <= x < self.b or self.c < x <= self.d

    def pull_back(self, x: float) -> float:
        return inverse_transform_point(*self.parameters, x)

    def push_forward(self, x: float) -> float:
        return transform_point(*self.parameters, x)

    def __call__(self, x: float, y: float) -> float:
        return self.push_forward(self.op(self.pull_back(x), self.pull_back(y)))


def transform_uninorm(U: OperatorHandle, a: float, b: float, c: float, d: float, v: float) -> TransformedOperator:
    return TransformedOperator(op=U, a=a, b=b, c=c, d=d, v=v)
