from typing import Iterable, List, Tuple

from unisum.constants import BINARY_GRID
from unisum.extended_sum.models import ChoiceFamilies, IntervalChoice, RowFamily, RowSide
from unisum.lib.errors import InvariantViolationError
from unisum.lib.logging import logger
from unisum.operators.classify import classify_c_strict
from unisum.operators.models import CompositeClass
from unisum.ordinal_sum.evaluate import ordinal_sum_uninorm
from unisum.ordinal_sum.models import OrdinalSumSpec, Summand
from unisum.uninorms.construct import underlying_tconorm, underlying_tnorm
from unisum.uninorms.models import OperatorHandle


def _unique(choices: Iterable[IntervalChoice]) -> Tuple[IntervalChoice, ...]:
    seen: List[IntervalChoice] = []
    for choice in choices:
        if choice not in seen:
            seen.append(choice)
    return tuple(seen)


def _c_strict(op: OperatorHandle, grid_n: int) -> bool:
    return classify_c_strict(op, grid_n) == CompositeClass.C_STRICT


def _upper_choices(s: Summand, grid_n: int) -> List[IntervalChoice]:
    # [0, c_k) joined with each member of F_k
    if s.upper_empty:
        return [IntervalChoice(endpoint=s.c, closed=True)]
    choices = [IntervalChoice(endpoint=s.c, closed=True)]
    if _c_strict(underlying_tconorm(s.op), grid_n):
        choices.append(IntervalChoice(endpoint=s.d, closed=False))
    choices.append(IntervalChoice(endpoint=s.d, closed=True))
    return choices


def _lower_choices(s: Summand, grid_n: int) -> List[IntervalChoice]:
    # [0, a_k) joined with each member of J_k; the empty member leaves [0, a_k)
    if s.lower_empty:
        return [IntervalChoice(endpoint=s.a, closed=False)]
    choices = [IntervalChoice(endpoint=s.a, closed=False)]
    if _c_strict(underlying_tnorm(s.op), grid_n):
        choices.append(IntervalChoice(endpoint=s.a, closed=True))
    choices.append(IntervalChoice(endpoint=s.b, closed=False))
    return choices


def _check_points(x: float, choices: Iterable[IntervalChoice]) -> List[float]:
    marks = sorted({0.0, 1.0} | {choice.endpoint for choice in choices})
    midpoints = [(lo + hi) / 2.0 for lo, hi in zip(marks, marks[1:])]
    return [y for y in sorted(set(marks) | set(midpoints)) if y != x]


def default_choice(U: OperatorHandle, x: float, admissible: Tuple[IntervalChoice, ...]) -> IntervalChoice:
    """The admissible choice whose min/max split of row x agrees with U at every check point."""
    points = _check_points(x, admissible)
    for choice in admissible:
        expected = [min(x, y) if choice.contains(y) else max(x, y) for y in points]
        if all(abs(U(x, y) - value) <= U.default_tol for y, value in zip(points, expected)):
            return choice
    raise InvariantViolationError(f"No admissible choice reproduces row {x} of {U.name}", witness=(x,))


def _g_family(spec: OrdinalSumSpec, U: OperatorHandle, x: float, grid_n: int) -> RowFamily:
    indices = tuple(k for k, s in enumerate(spec.summands) if s.b == x)
    closure = tuple(sorted({spec.summands[k].c for k in indices}))
    ends = {s.d for s in spec.summands}
    star = tuple(c for c in closure if c not in ends)

    choices: List[IntervalChoice] = []
    for k in indices:
        choices.extend(_upper_choices(spec.summands[k], grid_n))
    lowest = min(closure)
    for c in star:
        if c != lowest:
            choices.append(IntervalChoice(endpoint=c, closed=False))
        choices.append(IntervalChoice(endpoint=c, closed=True))

    admissible = _unique(choices)
    return RowFamily(
        point=x,
        side=RowSide.G,
        indices=indices,
        closure=closure,
        star=star,
        admissible=admissible,
        default=default_choice(U, x, admissible),
    )


def _h_family(spec: OrdinalSumSpec, U: OperatorHandle, x: float, grid_n: int) -> RowFamily:
    indices = tuple(k for k, s in enumerate(spec.summands) if s.c == x)
    closure = tuple(sorted({spec.summands[k].b for k in indices}))
    starts = {s.a for s in spec.summands}
    star = tuple(b for b in closure if b not in starts)

    choices: List[IntervalChoice] = []
    for k in indices:
        choices.extend(_lower_choices(spec.summands[k], grid_n))
    highest = max(closure)
    for b in star:
        choices.append(IntervalChoice(endpoint=b, closed=False))
        if b != highest:
            choices.append(IntervalChoice(endpoint=b, closed=True))

    admissible = _unique(choices)
    return RowFamily(
        point=x,
        side=RowSide.H,
        indices=indices,
        closure=closure,
        star=star,
        admissible=admissible,
        default=default_choice(U, x, admissible),
    )


def compute_choice_families(spec: OrdinalSumSpec, grid_n: int = BINARY_GRID) -> ChoiceFamilies:
    U = ordinal_sum_uninorm(spec)
    e = spec.e
    G = tuple(sorted({s.b for s in spec.summands if s.a == s.b != e and U(s.b, s.c) == s.b}))
    H = tuple(sorted({s.c for s in spec.summands if s.c == s.d != e and U(s.b, s.c) == s.c}))

    rows = [_g_family(spec, U, x, grid_n) for x in G] + [_h_family(spec, U, x, grid_n) for x in H]
    logger.info(
        "Computed choice families",
        extra={"G": G, "H": H, "admissible": {row.point: [str(c) for c in row.admissible] for row in rows}},
    )
    return ChoiceFamilies(G=G, H=H, rows=tuple(rows))
