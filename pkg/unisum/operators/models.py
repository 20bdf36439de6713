import math
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from unisum.constants import BINARY_GRID
from unisum.lib.errors import ConstructionError, SpecInvalidError
from unisum.lib.numeric import invert_monotone, unit_grid
from unisum.uninorms.models import OperatorHandle, OperatorKind

UnaryMap = Callable[[float], float]


class GeneratorKind(str, Enum):
    TNORM = "tnorm-decreasing"
    TCONORM = "tconorm-increasing"
    BIPOLAR = "uninorm-bipolar"


class ArchimedeanClass(str, Enum):
    STRICT = "strict"
    NILPOTENT = "nilpotent"
    NOT_ARCHIMEDEAN = "not-archimedean"


class CompositeClass(str, Enum):
    C_STRICT = "c-strict"
    C_NILPOTENT = "c-nilpotent"


class Generator(BaseModel):
    """
    Additive generator: continuous strictly monotone map from [0,1] to the
    extended reals, with its pseudo-inverse.

    - tnorm kind: decreasing, t(1) = 0
    - tconorm kind: increasing, c(0) = 0
    - bipolar kind: increasing, f(0) = -inf, f(1) = +inf

    Generators are stored as given; the positive multiplicative constant they
    are unique up to is never normalized away.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: GeneratorKind
    eval: UnaryMap = Field(..., description="Monotone map from [0,1] to extended reals")
    closed_inverse: Optional[UnaryMap] = Field(
        default=None,
        description="Analytic inverse on the generator's range; bisection is used when absent",
    )
    family: str = Field(default="custom", description="Family name used by the document schema")
    params: Dict[str, float] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_shape(self) -> "Generator":
        at_zero, at_one = self.endpoint_values
        if self.kind == GeneratorKind.TNORM and at_one != 0.0:
            raise ConstructionError(f"t-norm generator {self.family} must vanish at 1, got {at_one}")
        if self.kind == GeneratorKind.TCONORM and at_zero != 0.0:
            raise ConstructionError(f"t-conorm generator {self.family} must vanish at 0, got {at_zero}")
        if self.kind == GeneratorKind.BIPOLAR and (at_zero != -math.inf or at_one != math.inf):
            raise ConstructionError(
                f"bipolar generator {self.family} needs endpoint values (-inf, inf), got ({at_zero}, {at_one})"
            )

        values = [self.eval(float(x)) for x in unit_grid(BINARY_GRID)]
        pairs = zip(values, values[1:])
        if self.decreasing:
            ordered = all(right < left for left, right in pairs)
        else:
            ordered = all(left < right for left, right in pairs)
        if not ordered:
            raise ConstructionError(f"Generator {self.family} is not strictly monotone on samples")
        return self

    @property
    def decreasing(self) -> bool:
        return self.kind == GeneratorKind.TNORM

    @property
    def closed_form(self) -> bool:
        return self.closed_inverse is not None

    @property
    def endpoint_values(self) -> Tuple[float, float]:
        return self.eval(0.0), self.eval(1.0)

    def __call__(self, x: float) -> float:
        return self.eval(x)

    def inverse(self, s: float) -> float:
        """Pseudo-inverse: clamps values beyond the range to the matching endpoint."""
        at_zero, at_one = self.endpoint_values
        if self.decreasing:
            if s >= at_zero:
                return 0.0
            if s <= 0.0:
                return 1.0
        else:
            if s <= at_zero:
                return 0.0
            if s >= at_one:
                return 1.0
        if self.closed_inverse is not None:
            return min(1.0, max(0.0, self.closed_inverse(s)))
        return invert_monotone(self.eval, s, increasing=not self.decreasing)


class OrdinalSummand(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lo: float = Field(..., ge=0.0, le=1.0)
    hi: float = Field(..., ge=0.0, le=1.0)
    op: OperatorHandle

    @model_validator(mode="after")
    def check_bounds(self) -> "OrdinalSummand":
        if not self.lo < self.hi:
            raise SpecInvalidError(
                f"Summand interval [{self.lo}, {self.hi}] is empty",
                rule="0 <= lo < hi <= 1",
            )
        return self


class TNormSummandList(BaseModel):
    """Summands <lo_k, hi_k, T_k> of an ordinal sum of t-norms, sorted by lo."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: List[OrdinalSummand] = Field(default_factory=list)

    @property
    def summand_kind(self) -> OperatorKind:
        return OperatorKind.TNORM

    @model_validator(mode="after")
    def check_disjoint(self) -> "TNormSummandList":
        ordered = sorted(self.entries, key=lambda entry: entry.lo)
        for left, right in zip(ordered, ordered[1:]):
            if right.lo < left.hi:
                raise SpecInvalidError(
                    f"Summand intervals ({left.lo}, {left.hi}) and ({right.lo}, {right.hi}) overlap",
                    rule="open summand intervals must be pairwise disjoint",
                )
        for entry in ordered:
            if entry.op.kind != self.summand_kind:
                raise ConstructionError(
                    f"Summand {entry.op.name} is a {entry.op.kind.value}, expected {self.summand_kind.value}"
                )
        object.__setattr__(self, "entries", ordered)
        return self


class TConormSummandList(TNormSummandList):
    """Summands <lo_k, hi_k, C_k> of an ordinal sum of t-conorms, sorted by lo."""

    @property
    def summand_kind(self) -> OperatorKind:
        return OperatorKind.TCONORM
