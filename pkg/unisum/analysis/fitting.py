import math
from functools import cached_property
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.interpolate import PchipInterpolator

from unisum.analysis.sections import crossing
from unisum.constants import BINARY_GRID, FIT_DEPTH, FIT_RESOLUTION
from unisum.lib.errors import ConstructionError, NotInClassError
from unisum.lib.logging import logger
from unisum.lib.numeric import clamp_unit, invert_monotone, unit_grid
from unisum.operators.models import Generator, GeneratorKind
from unisum.operators.tnorms import dualize, generated_tconorm, generated_tnorm
from unisum.uninorms.construct import classify_conjunctive, make_representable, underlying_tconorm, underlying_tnorm
from unisum.uninorms.models import BoundaryRule, InternalBoundary, OperatorHandle, OperatorKind

# powers at or below this count as 0
_TINY = 1e-300
# below this the table continues on whole generator values
_DENSE_FLOOR = 1e-7
_DENSE_SPAN = 32.0
# crossings are bisected to about 1e-12
_CURVE_SLACK = 1e-9


class FittedGenerator(BaseModel):
    """
    Tabulated monotone generator: PCHIP through (knot, value) pairs with
    strictly increasing knots. Arguments past the outermost knots take the
    end values exactly.
    """

    model_config = ConfigDict(frozen=True, ignored_types=(cached_property,))

    kind: GeneratorKind
    knots: Tuple[float, ...]
    values: Tuple[float, ...]
    residual: float = Field(default=math.inf, description="Max |op - generated op| over the check grid")

    @cached_property
    def forward_spline(self) -> PchipInterpolator:
        return PchipInterpolator(self.knots, self.values, extrapolate=False)

    @cached_property
    def backward_spline(self) -> PchipInterpolator:
        order = np.argsort(self.values)
        return PchipInterpolator(np.asarray(self.values)[order], np.asarray(self.knots)[order], extrapolate=False)

    @cached_property
    def value_ends(self) -> Tuple[Tuple[float, float], Tuple[float, float]]:
        """(lowest value, its knot) and (highest value, its knot)."""
        ends = sorted([(self.values[0], self.knots[0]), (self.values[-1], self.knots[-1])])
        return ends[0], ends[1]

    def __call__(self, x: float) -> float:
        if x <= self.knots[0]:
            return self.values[0]
        if x >= self.knots[-1]:
            return self.values[-1]
        return float(self.forward_spline(x))

    def inverse(self, s: float) -> float:
        (low, low_knot), (high, high_knot) = self.value_ends
        if s <= low:
            return low_knot
        if s >= high:
            return high_knot
        return float(self.backward_spline(s))

    def bipolar_eval(self, x: float) -> float:
        if x <= 0.0:
            return -math.inf
        if x >= 1.0:
            return math.inf
        return self(x)

    def as_generator(self) -> Generator:
        evaluate = self.bipolar_eval if self.kind == GeneratorKind.BIPOLAR else self.__call__
        return Generator(kind=self.kind, eval=evaluate, closed_inverse=self.inverse, family="fitted")


def _zero_level(levels: List[Tuple[float, float]], step: float) -> float:
    # t(0) of a nilpotent t, extrapolated from the last two levels and kept inside the last step
    (x1, v1), (x2, v2) = levels[-2], levels[-1]
    extrapolated = v2 + x2 * (v2 - v1) / (x1 - x2)
    return min(max(extrapolated, v2 + 1e-6 * step), v2 + step)


def _tnorm_levels(T: OperatorHandle, anchor: float, resolution: int, depth: float) -> List[Tuple[float, float]]:
    """
    Points of the additive generator t of an Archimedean T, scaled so that
    t(anchor) = 1.

    Taking the T-square root of the anchor `resolution` times gives a root r
    with t(r) = 2^-resolution, and the T-powers of r lay t out on that
    lattice. Once the powers drop below _DENSE_FLOOR, or t passes
    _DENSE_SPAN, powers of the anchor carry the table on to t = depth. A
    vanishing power ends the table of a nilpotent T at x = 0.
    """
    step, root = 2.0**-resolution, anchor
    for _ in range(resolution):
        root = invert_monotone(lambda s: T(s, s), root, increasing=True, lo=root, hi=1.0)
    if not root < 1.0:
        raise NotInClassError(f"{T.name} has no square root of {anchor} chain below 1", witness=(anchor,))

    levels = [(1.0, 0.0)]
    x, value, overshot = 1.0, 0.0, False
    while value < depth:
        fine = overshot or (x >= _DENSE_FLOOR and value < _DENSE_SPAN)
        factor, increment = (root, step) if fine else (anchor, 1.0)
        power = T(x, factor)
        if power <= _TINY:
            if not fine:
                overshot = True
                continue
            levels.append((0.0, _zero_level(levels, step)))
            break
        if not power < x:
            raise NotInClassError(
                f"T-powers of {factor} stall at {x}; {T.name} is not Archimedean", witness=(x, factor)
            )
        x, value = power, value + increment
        levels.append((x, value))
    return levels


def _tabulate(kind: GeneratorKind, levels: List[Tuple[float, float]]) -> FittedGenerator:
    table = {}
    for x, value in levels:
        table.setdefault(x, value)
    knots = sorted(table)
    if len(knots) < 2:
        raise ConstructionError(f"A {kind.value} table needs two knots, got {knots}")
    return FittedGenerator(kind=kind, knots=tuple(knots), values=tuple(table[x] for x in knots))


def _tnorm_table(T: OperatorHandle, anchor: float, resolution: int, depth: float) -> FittedGenerator:
    return _tabulate(GeneratorKind.TNORM, _tnorm_levels(T, anchor, resolution, depth))


def _tconorm_table(C: OperatorHandle, anchor: float, resolution: int, depth: float) -> FittedGenerator:
    # c(x) = t(1 - x) for the dual t-norm; knots that round onto 1 are dropped
    dual = _tnorm_levels(dualize(C), anchor, resolution, depth)
    levels = [(1.0 - x, value) for x, value in dual if x == 0.0 or 1.0 - x < 1.0]
    return _tabulate(GeneratorKind.TCONORM, levels)


def _bipolar_table(U: OperatorHandle, anchor: float, resolution: int, depth: float) -> FittedGenerator:
    """
    f on [0,e] is -t(x/e) and on [e,1] is c((x-e)/(1-e)), up to one scale
    between the halves. The scale comes from a pair x < e < y with U(x,y) = e.
    """
    e = U.neutral
    lower = _tnorm_table(underlying_tnorm(U), anchor, resolution, depth)
    upper = _tconorm_table(underlying_tconorm(U), anchor, resolution, depth)

    x = e * anchor
    y = invert_monotone(lambda z: U(x, z), e, increasing=True, lo=e, hi=1.0)
    upper_at_y = upper((y - e) / (1.0 - e))
    if upper_at_y <= 0.0:
        raise NotInClassError(f"Cannot balance the generator halves of {U.name}", witness=(x, y))
    scale = lower(anchor) / upper_at_y

    levels = [(e * k, -v) for k, v in zip(lower.knots, lower.values)]
    levels += [(e + (1.0 - e) * k, scale * v) for k, v in zip(upper.knots[1:], upper.values[1:])]
    return _tabulate(GeneratorKind.BIPOLAR, levels)


def generated_operator(fitted: FittedGenerator, like: OperatorHandle) -> OperatorHandle:
    """The operator fitted generates, carrying the neutral element and character of like."""
    gen = fitted.as_generator()
    if fitted.kind == GeneratorKind.TNORM:
        op = generated_tnorm(gen)
    elif fitted.kind == GeneratorKind.TCONORM:
        op = generated_tconorm(gen)
    else:
        op = make_representable(gen, classify_conjunctive(like))
    return op.model_copy(update={"neutral": like.neutral, "numeric": True, "name": f"fitted[{like.name}]"})


def _residual(op: OperatorHandle, rebuilt: OperatorHandle, grid_n: int) -> float:
    grid = unit_grid(grid_n, interior=True)
    return max(abs(op(float(x), float(y)) - rebuilt(float(x), float(y))) for x in grid for y in grid)


def fit_generator(
    op: OperatorHandle,
    anchor: float = 0.5,
    resolution: int = FIT_RESOLUTION,
    depth: float = FIT_DEPTH,
    grid_n: int = 11,
) -> FittedGenerator:
    """
    Tabulated generator of an Archimedean t-norm or t-conorm, or of a
    representable uninorm, sampled from its level structure. Generators are
    unique only up to scale; this one has |t(anchor)| = 1.
    """
    if op.kind == OperatorKind.TNORM:
        fitted = _tnorm_table(op, anchor, resolution, depth)
    elif op.kind == OperatorKind.TCONORM:
        fitted = _tconorm_table(op, anchor, resolution, depth)
    else:
        fitted = _bipolar_table(op, anchor, resolution, depth)
    fitted = fitted.model_copy(update={"residual": _residual(op, generated_operator(fitted, op), grid_n)})
    logger.debug(
        "Fitted generator",
        extra={"operator": op.name, "kind": fitted.kind.value, "knots": len(fitted.knots), "residual": fitted.residual},
    )
    return fitted


def fit_boundary(U: OperatorHandle, grid_n: int = BINARY_GRID) -> InternalBoundary:
    """
    Switching curve of an s-internal uninorm, traced through its crossing r
    and interpolated between samples.

    Ties on the curve are decided by float comparisons no sample can
    recover, so within a band of the curve U's own value stands. The band
    is the interpolation error seen at the midpoints between samples.
    """
    knots = unit_grid(grid_n)
    spline = PchipInterpolator(knots, [crossing(U, float(x)) for x in knots])
    midpoints = 0.5 * (knots[1:] + knots[:-1])
    error = max(abs(float(spline(m)) - crossing(U, float(m))) for m in midpoints)

    def v(x: float) -> float:
        return clamp_unit(float(spline(x)))

    return InternalBoundary(v=v, on_boundary_rule=BoundaryRule.CUSTOM, custom=U, band=2.0 * error + _CURVE_SLACK)
