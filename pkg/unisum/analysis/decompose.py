from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from unisum.analysis.fitting import fit_boundary, fit_generator, generated_operator
from unisum.analysis.models import (
    DecompositionResult,
    IdempotentSet,
    MultiFunctionGraph,
    RecoveredSummand,
    SummandKind,
)
from unisum.analysis.multifunction import extract_multifunction
from unisum.analysis.sections import crossing, find_idempotents
from unisum.analysis.verify import verify_pointwise
from unisum.constants import BREAKPOINT_SNAP, DECOMPOSE_GRID, DECOMPOSE_RESIDUAL_TOL
from unisum.extended_sum.choices import compute_choice_families, default_choice
from unisum.extended_sum.evaluate import extended_sum_uninorm
from unisum.extended_sum.models import ChoiceAssignment, ExtendedOrdinalSumSpec
from unisum.lib.errors import NotInClassError, ResidualExceededError, UnisumError
from unisum.lib.logging import logger
from unisum.lib.numeric import clamp_unit, unit_grid
from unisum.operators.tnorms import maximum, minimum
from unisum.ordinal_sum.evaluate import derive_B_C_n
from unisum.ordinal_sum.models import OrdinalSumSpec, Summand
from unisum.ordinal_sum.transform import transform_point
from unisum.uninorms.construct import make_s_internal
from unisum.uninorms.models import OperatorHandle, OperatorKind

# how far inside a piece r is sampled for its one-sided limits
_INSET = 1e-7


class Piece(BaseModel):
    """An elementary interval between consecutive breakpoints on one side of e."""

    model_config = ConfigDict(frozen=True)

    lo: float
    hi: float
    idempotent: bool
    horizontal: bool
    level: Optional[float] = None

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)


def _merge_close(points: Sequence[float], grid: np.ndarray) -> List[float]:
    """Collapse points closer than BREAKPOINT_SNAP, keeping the one nearest to a grid sample."""
    merged: List[List[float]] = []
    for p in sorted(points):
        if merged and p - merged[-1][-1] <= BREAKPOINT_SNAP:
            merged[-1].append(p)
        else:
            merged.append([p])
    return [min(cluster, key=lambda p: float(np.min(np.abs(grid - p)))) for cluster in merged]


def _breakpoints(e: float, idem: IdempotentSet, graph: MultiFunctionGraph, grid: np.ndarray) -> List[float]:
    points = {0.0, e, 1.0}
    for lo, hi in idem.intervals:
        points.update((lo, hi))
    for segment in graph.segments:
        points.update((segment.x_lo, segment.x_hi))
    return _merge_close(points, grid)


def _nearest(value: float, candidates: Sequence[float], slack: float) -> float:
    best = min(candidates, key=lambda p: abs(p - value))
    return best if abs(best - value) <= slack else value


def _pieces(U: OperatorHandle, points: List[float], tol: float) -> List[Piece]:
    pieces = []
    for lo, hi in zip(points, points[1:]):
        span = hi - lo
        mid = 0.5 * (lo + hi)
        idempotent = abs(U(mid, mid) - mid) <= tol
        levels = [crossing(U, lo + t * span) for t in (0.25, 0.5, 0.75)]
        if max(levels) - min(levels) <= BREAKPOINT_SNAP:
            pieces.append(Piece(lo=lo, hi=hi, idempotent=idempotent, horizontal=True, level=levels[1]))
        elif levels[0] > levels[1] > levels[2]:
            pieces.append(Piece(lo=lo, hi=hi, idempotent=idempotent, horizontal=False))
        else:
            raise NotInClassError(
                f"r is neither constant nor strictly decreasing on ({lo}, {hi}): {levels}", witness=(lo, hi)
            )
    return pieces


def _restrict_complete(U: OperatorHandle, a: float, b: float, c: float, d: float) -> OperatorHandle:
    """
    U_k = f^-1 . U . (f x f) with f mapping [0,1/2) onto [a,b), 1/2 onto
    U(b,c) and (1/2,1] onto (c,d].
    """
    middle = U(b, c)

    def pull_back(w: float) -> float:
        if w == middle:
            return 0.5
        if a < b and w < b:
            return clamp_unit(0.5 * (w - a) / (b - a))
        if c < d and w > c:
            return clamp_unit(1.0 - 0.5 * (d - w) / (d - c))
        return 0.5

    def evaluate(s: float, t: float) -> float:
        x = transform_point(a, b, c, d, 0.5, middle, s)
        y = transform_point(a, b, c, d, 0.5, middle, t)
        return pull_back(U(x, y))

    return OperatorHandle(eval=evaluate, neutral=0.5, kind=OperatorKind.UNINORM, name=f"U|[{a},{b})u({c},{d}]")


def _restrict_lower(U: OperatorHandle, a: float, b: float) -> OperatorHandle:
    width = b - a
    return OperatorHandle(
        eval=lambda s, t: clamp_unit((U(a + width * s, a + width * t) - a) / width),
        neutral=1.0,
        kind=OperatorKind.TNORM,
        name=f"T|[{a},{b}]",
    )


def _restrict_upper(U: OperatorHandle, c: float, d: float) -> OperatorHandle:
    width = d - c
    return OperatorHandle(
        eval=lambda s, t: clamp_unit((U(c + width * s, c + width * t) - c) / width),
        neutral=0.0,
        kind=OperatorKind.TCONORM,
        name=f"C|[{c},{d}]",
    )


def _generated(op: OperatorHandle) -> Tuple[OperatorHandle, float]:
    """The operator generated by a generator fitted to op, with the fit residual."""
    try:
        fitted = fit_generator(op)
        return generated_operator(fitted, op), fitted.residual
    except (UnisumError, ValueError) as e:
        raise NotInClassError(f"No generator fits {op.name}: {e}") from e


def _traced(op: OperatorHandle) -> OperatorHandle:
    """The s-internal uninorm on the switching curve traced from op."""
    try:
        boundary = fit_boundary(op)
    except (UnisumError, ValueError) as e:
        raise NotInClassError(f"No switching curve fits {op.name}: {e}") from e
    return make_s_internal(boundary).model_copy(update={"neutral": op.neutral, "name": f"traced[{op.name}]"})


class _Assembly(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    summands: List[Summand] = []
    recovered: List[RecoveredSummand] = []
    sets: Dict[str, List[float]] = {}

    def add(
        self, summand: Summand, kind: SummandKind, proof_class: str, fit_residual: Optional[float] = None
    ) -> None:
        self.summands.append(summand)
        self.recovered.append(
            RecoveredSummand(
                a=summand.a,
                b=summand.b,
                c=summand.c,
                d=summand.d,
                kind=kind,
                proof_class=proof_class,
                fit_residual=fit_residual,
            )
        )
        side = summand.c if proof_class.startswith("N") else summand.a
        self.sets.setdefault(proof_class, []).append(side)


def _lower_summands(
    U: OperatorHandle, pieces: List[Piece], upper_points: List[float], slack: float, out: _Assembly
) -> List[Tuple[float, float]]:
    """K1..K4 summands from the pieces of [0,e]; returns the upper ranges they occupy."""
    occupied = []
    for piece in pieces:
        a, b = piece.lo, piece.hi
        if piece.horizontal:
            y = _nearest(piece.level, upper_points, slack)
            if piece.idempotent:
                out.add(Summand(a=a, b=b, c=y, d=y, op=minimum()), SummandKind.INTERNAL, "K4")
            else:
                op, residual = _generated(_restrict_lower(U, a, b))
                out.add(Summand(a=a, b=b, c=y, d=y, op=op), SummandKind.ARCHIMEDEAN_TNORM, "K2", residual)
            continue

        c = _nearest(crossing(U, b - _INSET * (b - a)), upper_points, slack)
        d = _nearest(crossing(U, a + _INSET * (b - a)), upper_points, slack)
        restricted = _restrict_complete(U, a, b, c, d)
        if piece.idempotent:
            out.add(Summand(a=a, b=b, c=c, d=d, op=_traced(restricted)), SummandKind.S_INTERNAL, "K3")
        else:
            op, residual = _generated(restricted)
            out.add(Summand(a=a, b=b, c=c, d=d, op=op), SummandKind.REPRESENTABLE, "K1", residual)
        occupied.append((c, d))
    return occupied


def _upper_summands(
    U: OperatorHandle,
    pieces: List[Piece],
    occupied: List[Tuple[float, float]],
    lower_points: List[float],
    slack: float,
    out: _Assembly,
) -> None:
    """N2 and N4 summands for the pieces of [e,1] not paired with a lower piece."""
    for piece in pieces:
        if any(c <= piece.mid <= d for c, d in occupied):
            continue
        if not piece.horizontal:
            raise NotInClassError(
                f"r is strictly decreasing on ({piece.lo}, {piece.hi}) without a lower counterpart",
                witness=(piece.lo, piece.hi),
            )
        c, d = piece.lo, piece.hi
        y = _nearest(piece.level, lower_points, slack)
        if piece.idempotent:
            out.add(Summand(a=y, b=y, c=c, d=d, op=maximum()), SummandKind.INTERNAL, "N4")
        else:
            op, residual = _generated(_restrict_upper(U, c, d))
            out.add(Summand(a=y, b=y, c=c, d=d, op=op), SummandKind.ARCHIMEDEAN_TCONORM, "N2", residual)


def _read_choices(U: OperatorHandle, base: OrdinalSumSpec) -> ExtendedOrdinalSumSpec:
    """g and h as U's own rows at the points of G and H, kept only where they differ from the base."""
    families = compute_choice_families(base)
    g, h = [], []
    for family in families.rows:
        actual = default_choice(U, family.point, family.admissible)
        if actual != family.default:
            target = g if family.point in families.G else h
            target.append(ChoiceAssignment(point=family.point, choice=actual))
    return ExtendedOrdinalSumSpec(base=base, g=tuple(g), h=tuple(h))


def decompose(
    U: OperatorHandle,
    grid_n: int = DECOMPOSE_GRID,
    tol: Optional[float] = None,
    residual_tol: float = DECOMPOSE_RESIDUAL_TOL,
    verify_grid: Optional[int] = None,
) -> DecompositionResult:
    """
    Recovers an extended ordinal sum equal to U, a uninorm with continuous
    underlying operations.

    The unit interval is cut at the idempotent-set borders and at the borders
    of the segments of r. On each lower piece r is constant (a one-sided
    t-norm summand, Archimedean on a gap and min on an idempotent interval) or
    strictly decreasing (a complete summand, representable on a gap and
    s-internal on an idempotent interval, paired with the upper range r
    sweeps). Upper pieces left unpaired become one-sided t-conorm summands.
    Summand operators are rebuilt from what U shows on each piece. Gaps get
    the operator of a fitted generator and s-internal pieces switch on a
    traced curve; idempotent one-sided pieces are min or max. g and h are
    read off U's rows. The rebuilt sum is verified pointwise against U.
    """
    tol = U.default_tol if tol is None else tol
    e = U.neutral
    grid = unit_grid(grid_n)
    slack = 2.0 / (grid_n - 1)

    idem = find_idempotents(U, grid_n, tol)
    graph = extract_multifunction(U, grid_n, tol)
    points = _breakpoints(e, idem, graph, grid)
    lower_points = [p for p in points if p <= e]
    upper_points = [p for p in points if p >= e]

    out = _Assembly()
    occupied = _lower_summands(U, _pieces(U, lower_points, tol), upper_points, slack, out)
    _upper_summands(U, _pieces(U, upper_points, tol), occupied, lower_points, slack, out)

    base = OrdinalSumSpec(e=e, summands=tuple(out.summands))
    espec = _read_choices(U, base)
    B, C, _ = derive_B_C_n(base)
    out.sets.update({"B": list(B), "C": list(C)})

    rebuilt = extended_sum_uninorm(espec, name=f"decomposed[{U.name}]")
    diff = verify_pointwise(U, rebuilt, grid_n=verify_grid or grid_n, tol=residual_tol)
    logger.info(
        "Decomposed uninorm",
        extra={
            "operator": U.name,
            "grid": grid_n,
            "breakpoints": points,
            "summands": [f"{r.proof_class}<{r.a}, {r.b}, {r.c}, {r.d}>" for r in out.recovered],
            "residual": diff.max_difference,
        },
    )
    if not diff.within_tol:
        raise ResidualExceededError(
            f"Reconstruction of {U.name} differs by {diff.max_difference} at {diff.witness}",
            residual=diff.max_difference,
            witness=diff.witness,
        )

    return DecompositionResult(
        spec=espec,
        summands=tuple(out.recovered),
        residual=diff.max_difference,
        witness=diff.witness,
        breakpoints=tuple(p for p in points if 0.0 < p < 1.0),
        classification_sets=out.sets,
    )
