from enum import Enum
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from unisum.lib.errors import InvalidChoiceError
from unisum.ordinal_sum.models import OrdinalSumSpec


class IntervalChoice(BaseModel):
    """The interval [0, endpoint) or [0, endpoint] on which a G/H row takes min."""

    model_config = ConfigDict(frozen=True)

    endpoint: float = Field(..., ge=0.0, le=1.0)
    closed: bool = Field(..., description="True for [0, endpoint], False for [0, endpoint)")

    def contains(self, y: float) -> bool:
        return y <= self.endpoint if self.closed else y < self.endpoint

    def __str__(self) -> str:
        return f"[0, {self.endpoint}{']' if self.closed else ')'}"


class RowSide(str, Enum):
    G = "G"
    H = "H"


class RowFamily(BaseModel):
    """
    Admissible choices for one point of G (or H).

    For x in G: indices is G_x, closure is G_x**, star is G_x*. For x in H the
    same fields hold H_x, H_x** and H_x*.
    """

    model_config = ConfigDict(frozen=True)

    point: float
    side: RowSide
    indices: Tuple[int, ...]
    closure: Tuple[float, ...]
    star: Tuple[float, ...]
    admissible: Tuple[IntervalChoice, ...]
    default: IntervalChoice = Field(..., description="The choice under which the row matches the base sum")

    def check(self, choice: IntervalChoice) -> IntervalChoice:
        if choice not in self.admissible:
            options = ", ".join(str(option) for option in self.admissible)
            raise InvalidChoiceError(
                f"{self.side.value}-choice {choice} at {self.point} is not admissible; expected one of {options}"
            )
        return choice


class ChoiceFamilies(BaseModel):
    model_config = ConfigDict(frozen=True)

    G: Tuple[float, ...]
    H: Tuple[float, ...]
    rows: Tuple[RowFamily, ...] = Field(default=(), description="One family per point of G and of H")

    def row(self, point: float) -> Optional[RowFamily]:
        for family in self.rows:
            if family.point == point:
                return family
        return None


class ChoiceAssignment(BaseModel):
    model_config = ConfigDict(frozen=True)

    point: float = Field(..., ge=0.0, le=1.0)
    choice: IntervalChoice


class ExtendedOrdinalSumSpec(BaseModel):
    """
    Base ordinal sum plus the g and h choice functions. Points of G and H
    that are not assigned use their default choice, which reproduces the base.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    base: OrdinalSumSpec
    g: Tuple[ChoiceAssignment, ...] = Field(default=())
    h: Tuple[ChoiceAssignment, ...] = Field(default=())

    @model_validator(mode="after")
    def check_unique_points(self) -> "ExtendedOrdinalSumSpec":
        for name, assignments in (("g", self.g), ("h", self.h)):
            points = [assignment.point for assignment in assignments]
            if len(points) != len(set(points)):
                raise InvalidChoiceError(f"{name} assigns some point twice: {points}")
        return self

    @property
    def g_map(self) -> Dict[float, IntervalChoice]:
        return {assignment.point: assignment.choice for assignment in self.g}

    @property
    def h_map(self) -> Dict[float, IntervalChoice]:
        return {assignment.point: assignment.choice for assignment in self.h}


class DiffPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: float
    y: float
    base: float
    extended: float

    @property
    def complement_error(self) -> float:
        return abs(self.base + self.extended - (self.x + self.y))
