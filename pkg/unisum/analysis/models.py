from enum import Enum
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from unisum.extended_sum.models import ExtendedOrdinalSumSpec


class Finding(BaseModel):
    """Largest violation of one checked property, with the point that shows it."""

    model_config = ConfigDict(frozen=True)

    name: str
    max_violation: float = Field(..., description="0 when the property holds exactly on the sample")
    witness: Optional[Tuple[float, ...]] = None
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tol


class AxiomReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    operator: str
    findings: List[Finding]

    @property
    def passed(self) -> bool:
        return all(finding.passed for finding in self.findings)

    def finding(self, name: str) -> Finding:
        return next(finding for finding in self.findings if finding.name == name)


class DiffReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_difference: float
    witness: Optional[Tuple[float, float]] = None
    tol: float

    @property
    def within_tol(self) -> bool:
        return self.max_difference <= self.tol


class JumpReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_jump: float = Field(..., description="Largest change between adjacent samples outside the excluded corners")
    witness: Optional[Tuple[float, float, float, float]] = Field(
        default=None, description="The two adjacent sample points (x1, y1, x2, y2)"
    )
    excluded_max_jump: float = Field(default=0.0, description="Largest change next to an excluded corner")


class IdempotentSet(BaseModel):
    """Maximal closed intervals of idempotents (points are intervals with lo == hi) and the open gaps between them."""

    model_config = ConfigDict(frozen=True)

    intervals: Tuple[Tuple[float, float], ...]
    gaps: Tuple[Tuple[float, float], ...]

    def points(self) -> List[float]:
        return sorted({bound for interval in self.intervals for bound in interval})

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return any(lo - tol <= x <= hi + tol for lo, hi in self.intervals)


class SegmentKind(str, Enum):
    DECREASING = "strictly-decreasing"
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


class Segment(BaseModel):
    """
    One maximal piece of the characterizing multi-function r over [x_lo, x_hi].
    Horizontal pieces carry their level y_lo = y_hi; vertical ones sit at
    x_lo = x_hi and span [y_lo, y_hi]; decreasing ones carry samples of r.
    """

    model_config = ConfigDict(frozen=True)

    x_lo: float
    x_hi: float
    kind: SegmentKind
    y_lo: float
    y_hi: float
    samples: Tuple[Tuple[float, float], ...] = Field(default=())


class MultiFunctionGraph(BaseModel):
    model_config = ConfigDict(frozen=True)

    e: float
    segments: Tuple[Segment, ...]
    degenerate: bool = Field(
        default=False,
        description="True for e in {0, 1}, where r reduces to the border lines of the square",
    )

    def of_kind(self, kind: SegmentKind) -> List[Segment]:
        return [segment for segment in self.segments if segment.kind == kind]


class SummandKind(str, Enum):
    REPRESENTABLE = "representable"
    S_INTERNAL = "s-internal"
    ARCHIMEDEAN_TNORM = "archimedean-tnorm"
    ARCHIMEDEAN_TCONORM = "archimedean-tconorm"
    INTERNAL = "internal"


class RecoveredSummand(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    c: float
    d: float
    kind: SummandKind
    proof_class: Literal["K1", "K2", "K3", "K4", "N2", "N4"] = Field(
        ..., description="Bookkeeping class of the summand in the decomposition procedure"
    )
    fit_residual: Optional[float] = Field(
        default=None, description="Max error of the tabulated generator fitted to the summand"
    )


class DecompositionResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    spec: ExtendedOrdinalSumSpec
    summands: Tuple[RecoveredSummand, ...]
    residual: float
    witness: Optional[Tuple[float, float]] = None
    breakpoints: Tuple[float, ...]
    classification_sets: Dict[str, List[float]] = Field(
        default_factory=dict,
        description="K1..K4 and N2, N4 lower endpoints, plus B and C",
    )

    @property
    def summand_kinds(self) -> List[SummandKind]:
        return [summand.kind for summand in self.summands]
