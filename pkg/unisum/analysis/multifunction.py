from typing import Callable, List, Optional, Tuple

import numpy as np

from unisum.analysis.models import Finding, MultiFunctionGraph, Segment, SegmentKind
from unisum.analysis.sections import crossing
from unisum.constants import BREAKPOINT_SNAP, DECOMPOSE_GRID, JUMP_BRACKET
from unisum.lib.errors import InvariantViolationError, NotInClassError
from unisum.lib.logging import logger
from unisum.lib.numeric import locate_switch, unit_grid
from unisum.uninorms.models import OperatorHandle

Node = Tuple[float, float]

# r is located to INVERSION_XTOL, so samples of one horizontal run agree far closer than this
LEVEL_TOL = 1e-9


def _on_border(level: float) -> bool:
    # bisection toward 0 or 1 stops a bracket width short of it
    return level <= LEVEL_TOL or level >= 1.0 - LEVEL_TOL


def _border_level(level: float) -> float:
    if not _on_border(level):
        return level
    return 0.0 if level < 0.5 else 1.0


def _snap(x: float, grid: np.ndarray) -> float:
    nearest = float(grid[np.argmin(np.abs(grid - x))])
    return nearest if abs(nearest - x) <= BREAKPOINT_SNAP else x


def _locate_drop(
    r: Callable[[float], float], x0: float, x1: float, r0: float, r1: float, threshold: float
) -> Optional[Tuple[float, float, float]]:
    """
    Bisects a drop of r on [x0, x1] down to the bracket width. Returns
    (x, r just left of x, r just right of x) when the drop survives, i.e.
    r has a vertical segment at x, and None for a steep continuous descent.
    """
    lo, hi, r_lo, r_hi = x0, x1, r0, r1
    while hi - lo > JUMP_BRACKET:
        mid = 0.5 * (lo + hi)
        r_mid = r(mid)
        if r_lo - r_mid >= r_mid - r_hi:
            hi, r_hi = mid, r_mid
        else:
            lo, r_lo = mid, r_mid
    if r_lo - r_hi > threshold:
        return 0.5 * (lo + hi), r_lo, r_hi
    return None


def _switch(predicate: Callable[[float], bool], lo: float, hi: float) -> Optional[float]:
    if predicate(lo) == predicate(hi):
        return None
    return locate_switch(predicate, lo, hi)


def _trace(U: OperatorHandle, grid: np.ndarray, step: float) -> List[Node]:
    """Polyline through the graph of r: grid samples plus refined run borders and vertical drops."""

    def r(x: float) -> float:
        return _border_level(crossing(U, x))

    rs = [r(float(x)) for x in grid]

    nodes: List[Node] = [(float(grid[0]), rs[0])]
    previous = None
    for x0, x1, r0, r1 in zip(grid, grid[1:], rs, rs[1:]):
        x0, x1 = float(x0), float(x1)
        delta = r1 - r0
        if delta > BREAKPOINT_SNAP:
            raise NotInClassError(
                f"r increases between {x0} and {x1} ({r0} -> {r1}); {U.name} is not in the class",
                witness=(x0, x1),
            )

        if abs(delta) <= BREAKPOINT_SNAP:
            if previous == "decreasing" and len(nodes) >= 2:
                # the flat run starts inside the previous cell
                start = _switch(lambda x: r(x) <= r0 + LEVEL_TOL, nodes[-2][0], x0)
                if start is not None and nodes[-2][0] < _snap(start, grid) < x0:
                    nodes.insert(len(nodes) - 1, (_snap(start, grid), r0))
            nodes.append((x1, r1))
            previous = "flat"
            continue

        drop = _locate_drop(r, x0, x1, r0, r1, 2.0 * step) if -delta > 2.0 * step else None
        if drop is not None:
            x_v, r_left, r_right = drop
            x_v = _snap(x_v, grid)
            nodes.extend([(x_v, _snap(r_left, grid)), (x_v, _snap(r_right, grid)), (x1, r1)])
            previous = "flat" if abs(r1 - r_right) <= BREAKPOINT_SNAP else "decreasing"
            continue

        if previous == "flat":
            # the descent starts inside this cell
            start = _switch(lambda x: r(x) < r0 - LEVEL_TOL, x0, x1)
            if start is not None and x0 < _snap(start, grid) < x1:
                nodes.append((_snap(start, grid), r0))
        nodes.append((x1, r1))
        previous = "decreasing"

    return nodes


def _pair_kind(p: Node, q: Node) -> Optional[SegmentKind]:
    if q[0] == p[0]:
        return SegmentKind.VERTICAL if p[1] - q[1] > BREAKPOINT_SNAP else None
    if abs(q[1] - p[1]) <= BREAKPOINT_SNAP:
        return SegmentKind.HORIZONTAL
    return SegmentKind.DECREASING


def _segments(nodes: List[Node]) -> List[Segment]:
    runs: List[Tuple[SegmentKind, List[Node]]] = []
    for p, q in zip(nodes, nodes[1:]):
        kind = _pair_kind(p, q)
        if kind is None:
            continue
        if runs and runs[-1][0] == kind and runs[-1][1][-1] == p:
            last = runs[-1][1]
            same_level = kind != SegmentKind.HORIZONTAL or abs(last[0][1] - q[1]) <= BREAKPOINT_SNAP
            if same_level:
                last.append(q)
                continue
        runs.append((kind, [p, q]))

    segments = []
    for kind, run in runs:
        xs, ys = [x for x, _ in run], [y for _, y in run]
        if kind == SegmentKind.HORIZONTAL:
            level = _border_level(ys[0])
            segments.append(Segment(x_lo=xs[0], x_hi=xs[-1], kind=kind, y_lo=level, y_hi=level))
        elif kind == SegmentKind.VERTICAL:
            segments.append(Segment(x_lo=xs[0], x_hi=xs[0], kind=kind, y_lo=min(ys), y_hi=max(ys)))
        else:
            segments.append(
                Segment(x_lo=xs[0], x_hi=xs[-1], kind=kind, y_lo=ys[-1], y_hi=ys[0], samples=tuple(run))
            )
    return segments


def _twins(h: Segment, v: Segment, slack: float) -> bool:
    """
    v at x = level of h, spanning h's x-range. A column on x = 0 or x = 1
    may be shorter, as r(0) and r(1) see only one end of it; it still has to
    lie inside h's range and share an end with it.
    """
    level = h.y_lo
    if abs(v.x_lo - level) > slack:
        return False
    starts, ends = abs(v.y_lo - h.x_lo) <= slack, abs(v.y_hi - h.x_hi) <= slack
    if _on_border(level):
        inside = v.y_lo >= h.x_lo - slack and v.y_hi <= h.x_hi + slack
        return inside and (starts or ends)
    return starts and ends


def _mirrors(segments: List[Segment], step: float) -> Tuple[List[Segment], List[Segment]]:
    """
    Border mirrors to prepend and append. Every horizontal segment needs a
    vertical twin at x = level and the other way round. Twins on x = 0 or
    x = 1 are never produced by the scan, so they are added; a missing
    interior twin means r is not symmetric.
    """
    slack = 2.0 * step
    verticals = [s for s in segments if s.kind == SegmentKind.VERTICAL]
    horizontals = [s for s in segments if s.kind == SegmentKind.HORIZONTAL]
    head: List[Segment] = []
    tail: List[Segment] = []

    for h in horizontals:
        level = h.y_lo
        if any(_twins(h, v, slack) for v in verticals):
            continue
        if _on_border(level):
            border = _border_level(level)
            mirror = Segment(x_lo=border, x_hi=border, kind=SegmentKind.VERTICAL, y_lo=h.x_lo, y_hi=h.x_hi)
            (head if border == 0.0 else tail).append(mirror)
        elif h.x_hi - h.x_lo > slack:
            raise InvariantViolationError(
                f"Horizontal segment at {level} over [{h.x_lo}, {h.x_hi}] has no vertical twin",
                witness=(h.x_lo, level),
            )

    for v in verticals:
        if not any(_twins(h, v, slack) for h in horizontals) and v.y_hi - v.y_lo > slack:
            raise InvariantViolationError(
                f"Vertical segment at {v.x_lo} over [{v.y_lo}, {v.y_hi}] has no horizontal twin",
                witness=(v.x_lo, v.y_lo),
            )
    return head, tail


def _check_involution(U: OperatorHandle, segments: List[Segment], step: float) -> None:
    for segment in segments:
        if segment.kind != SegmentKind.DECREASING:
            continue
        for x, y in segment.samples:
            if not 0.0 < y < 1.0 or not segment.x_lo < x < segment.x_hi:
                continue
            back = crossing(U, y)
            if abs(back - x) > 2.0 * step:
                raise InvariantViolationError(
                    f"r is not symmetric at ({x}, {y}): r({y}) = {back}", witness=(x, y)
                )


def _check_connected(segments: List[Segment], step: float) -> None:
    def start(s: Segment) -> Node:
        return (s.x_lo, s.y_hi)

    def end(s: Segment) -> Node:
        return (s.x_hi, s.y_lo)

    for left, right in zip(segments, segments[1:]):
        (x1, y1), (x2, y2) = end(left), start(right)
        if abs(x1 - x2) > step or abs(y1 - y2) > step:
            raise InvariantViolationError(
                f"Graph of r breaks between ({x1}, {y1}) and ({x2}, {y2})", witness=(x1, y1, x2, y2)
            )


def extract_multifunction(
    U: OperatorHandle, grid_n: int = DECOMPOSE_GRID, tol: Optional[float] = None
) -> MultiFunctionGraph:
    """
    Graph of the characterizing multi-function r of U, with
    r(x) = sup {z : U(x,z) < e}, split into maximal horizontal, vertical and
    strictly decreasing segments.

    Samples of r whose level agrees within BREAKPOINT_SNAP belong to one
    horizontal run. A drop of more than two grid steps between neighbouring
    samples is bisected; if it survives down to the bracket width it is a
    vertical segment, otherwise a steep part of a decreasing run.
    """
    e = U.neutral
    grid = np.union1d(unit_grid(grid_n), [e])
    step = 1.0 / (grid_n - 1)

    segments = _segments(_trace(U, grid, step))
    _check_involution(U, segments, step)
    head, tail = _mirrors(segments, step)
    segments = head + segments + tail
    _check_connected(segments, step)

    graph = MultiFunctionGraph(e=e, segments=tuple(segments), degenerate=e in (0.0, 1.0))
    logger.info(
        "Extracted characterizing multi-function",
        extra={
            "operator": U.name,
            "grid": grid_n,
            "segments": [(s.kind.value, s.x_lo, s.x_hi, s.y_lo, s.y_hi) for s in segments],
        },
    )
    return graph


def segment_borders(graph: MultiFunctionGraph) -> List[float]:
    points = set()
    for segment in graph.segments:
        points.update((segment.x_lo, segment.x_hi))
        if segment.kind != SegmentKind.DECREASING:
            points.update((segment.y_lo, segment.y_hi))
    return sorted(points)


def check_segment_borders(U: OperatorHandle, graph: MultiFunctionGraph, tol: Optional[float] = None) -> Finding:
    """Border points of all maximal segments of r are idempotent."""
    tol = U.default_tol if tol is None else tol
    worst, witness = 0.0, None
    for p in segment_borders(graph):
        deficit = abs(U(p, p) - p)
        if deficit > worst:
            worst, witness = deficit, (p,)
    return Finding(name="segment-borders", max_violation=worst, witness=witness, tol=tol)
