from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from unisum.lib.errors import SpecInvalidError
from unisum.uninorms.construct import classify_conjunctive
from unisum.uninorms.models import AnnihilatorPolicy, OperatorHandle, OperatorKind


class SummandShape(str, Enum):
    EMPTY = "empty"
    COMPLETE = "complete"
    LOWER = "lower"
    UPPER = "upper"


class Summand(BaseModel):
    """
    One summand <a, b, c, d, U> of an ordinal sum of uninorms: U is carried
    onto [a,b) u {v} u (c,d]. Doubly-empty summands only contribute their
    conjunctive/disjunctive character, so op may be omitted for them.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a: float = Field(..., ge=0.0, le=1.0)
    b: float = Field(..., ge=0.0, le=1.0)
    c: float = Field(..., ge=0.0, le=1.0)
    d: float = Field(..., ge=0.0, le=1.0)
    op: Optional[OperatorHandle] = Field(default=None, description="U_k; optional for empty summands")
    character: Optional[AnnihilatorPolicy] = Field(
        default=None,
        description="U_k(1,0) as a policy bit, used when op is omitted",
    )
    v: Optional[float] = Field(
        default=None,
        ge=0.0,
        le=1.0,
        description="Pinned image of the summand's neutral element; must agree with the resolved v_k",
    )

    @model_validator(mode="after")
    def check_summand(self) -> "Summand":
        if not (self.a <= self.b <= self.c <= self.d):
            raise SpecInvalidError(
                f"Summand <{self.a}, {self.b}, {self.c}, {self.d}> is not ordered",
                rule="a <= b <= c <= d",
            )

        shape = self.shape
        if shape == SummandShape.EMPTY:
            if self.op is None and self.character is None:
                raise SpecInvalidError(
                    f"Empty summand at ({self.b}, {self.c}) needs an operator or a character bit",
                    rule="only U_k(0,1) matters for empty summands",
                )
            return self

        if self.op is None:
            raise SpecInvalidError(f"Summand <{self.a}, {self.b}, {self.c}, {self.d}> has no operator")

        proper = self.op.kind == OperatorKind.UNINORM and 0.0 < self.op.neutral < 1.0
        allowed = {
            SummandShape.COMPLETE: proper,
            SummandShape.LOWER: proper or self.op.kind == OperatorKind.TNORM,
            SummandShape.UPPER: proper or self.op.kind == OperatorKind.TCONORM,
        }[shape]
        if not allowed:
            raise SpecInvalidError(
                f"Summand <{self.a}, {self.b}, {self.c}, {self.d}> cannot carry {self.op.kind.value} {self.op.name}",
                rule="complete summands carry proper uninorms, lower ones t-norms, upper ones t-conorms",
            )
        return self

    @property
    def lower_empty(self) -> bool:
        return self.a == self.b

    @property
    def upper_empty(self) -> bool:
        return self.c == self.d

    @property
    def shape(self) -> SummandShape:
        if self.lower_empty and self.upper_empty:
            return SummandShape.EMPTY
        if self.lower_empty:
            return SummandShape.UPPER
        if self.upper_empty:
            return SummandShape.LOWER
        return SummandShape.COMPLETE

    @property
    def policy(self) -> AnnihilatorPolicy:
        if self.op is None:
            return self.character
        return classify_conjunctive(self.op)

    @property
    def conjunctive(self) -> bool:
        return self.policy == AnnihilatorPolicy.CONJUNCTIVE

    @property
    def label(self) -> str:
        name = self.op.name if self.op is not None else self.character.value
        return f"<{self.a}, {self.b}, {self.c}, {self.d}, {name}>"


def _check_cover(pieces: List[Tuple[float, float]], lo: float, hi: float, side: str) -> None:
    # closures of the non-empty open intervals must tile [lo, hi] exactly
    reach = lo
    for start, end in sorted(pieces):
        if start != reach:
            problem = "overlap" if start < reach else "leave a gap"
            raise SpecInvalidError(
                f"{side} intervals {problem} at {min(start, reach)}",
                rule=f"{side} intervals are disjoint and their closures cover [{lo}, {hi}]",
            )
        reach = end
    if reach != hi:
        raise SpecInvalidError(
            f"{side} intervals stop at {reach}, short of {hi}",
            rule=f"{side} intervals are disjoint and their closures cover [{lo}, {hi}]",
        )


def _coincide_degenerate(s: Summand, t: Summand) -> bool:
    # two point pieces at the same place carry no order to compare
    same_lower = s.lower_empty and t.lower_empty and s.b == t.b
    same_upper = s.upper_empty and t.upper_empty and s.c == t.c
    return same_lower or same_upper


class OrdinalSumSpec(BaseModel):
    """Neutral element e with the finite summand system (<a_k, b_k, c_k, d_k, U_k>)^e."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    e: float = Field(..., ge=0.0, le=1.0, description="Neutral element of the sum")
    summands: Tuple[Summand, ...] = Field(..., min_length=1)

    @model_validator(mode="after")
    def check_systems(self) -> "OrdinalSumSpec":
        e = self.e
        for s in self.summands:
            if not (s.b <= e <= s.c):
                raise SpecInvalidError(
                    f"Summand {s.label} does not straddle e={e}",
                    rule="[a_k, b_k] lies in [0, e] and [c_k, d_k] in [e, 1]",
                )

        _check_cover([(s.a, s.b) for s in self.summands if not s.lower_empty], 0.0, e, "lower")
        _check_cover([(s.c, s.d) for s in self.summands if not s.upper_empty], e, 1.0, "upper")

        for k, s in enumerate(self.summands):
            for i, t in enumerate(self.summands):
                if i == k or _coincide_degenerate(s, t):
                    continue
                if (s.b <= t.a) != (s.c >= t.d):
                    raise SpecInvalidError(
                        f"Summands {s.label} and {t.label} are not anti-comonotone",
                        rule="b_k <= a_i if and only if c_k >= d_i",
                    )

        seen: Dict[Tuple[float, float], str] = {}
        for s in self.summands:
            if s.shape == SummandShape.EMPTY:
                if (s.b, s.c) in seen:
                    raise SpecInvalidError(
                        f"Duplicated empty summand at ({s.b}, {s.c})",
                        rule="empty summands never share coordinates",
                    )
                seen[(s.b, s.c)] = s.label
        return self

    @property
    def size(self) -> int:
        return len(self.summands)


class DerivedSets(BaseModel):
    """
    B = {b_k} minus {a_k}, C = {c_k} minus {d_k}; n and v are listed per
    summand index, since several summands may share b_k.
    """

    model_config = ConfigDict(frozen=True)

    B: Tuple[float, ...]
    C: Tuple[float, ...]
    n: Dict[int, float] = Field(default_factory=dict, description="n(b_k) for every k with b_k in B")
    v: Tuple[float, ...] = Field(default=(), description="Resolved v_k per summand")
