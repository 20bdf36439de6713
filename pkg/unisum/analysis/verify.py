from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from unisum.analysis.models import AxiomReport, DiffReport, Finding, JumpReport
from unisum.constants import BINARY_GRID, TERNARY_GRID
from unisum.lib.logging import logger
from unisum.lib.numeric import clamp_unit, operator_table, unit_grid
from unisum.uninorms.models import OperatorHandle

CORNERS: Tuple[Tuple[float, float], ...] = ((0.0, 1.0), (1.0, 0.0))


def _raw(U: OperatorHandle, x: float, y: float) -> float:
    # bypasses the neutral shortcut of the handle, keeps the argument order it relies on
    lo, hi = (x, y) if x <= y else (y, x)
    return clamp_unit(U.eval(lo, hi))


def _argmax(values: np.ndarray) -> Tuple[float, Tuple[int, ...]]:
    index = np.unravel_index(int(np.argmax(values)), values.shape)
    return float(values[index]), tuple(int(i) for i in index)


def _commutativity(U: OperatorHandle, grid: np.ndarray, table: np.ndarray, tol: float) -> Finding:
    worst, (i, j) = _argmax(np.abs(table - table.T))
    return Finding(name="commutativity", max_violation=worst, witness=(grid[i], grid[j]), tol=tol)


def _monotonicity(U: OperatorHandle, grid: np.ndarray, table: np.ndarray, tol: float) -> Finding:
    drops = np.maximum(table[:-1, :] - table[1:, :], 0.0)
    worst, (i, j) = _argmax(drops)
    return Finding(
        name="monotonicity", max_violation=worst, witness=(grid[i], grid[i + 1], grid[j]), tol=tol
    )


def _neutrality(U: OperatorHandle, grid: np.ndarray, tol: float) -> Finding:
    errors = np.array([abs(_raw(U, U.neutral, float(x)) - x) for x in grid])
    worst, (i,) = _argmax(errors)
    return Finding(name="neutrality", max_violation=worst, witness=(U.neutral, grid[i]), tol=tol)


def check_associativity(U: OperatorHandle, grid: np.ndarray, tol: float) -> Finding:
    table = operator_table(U, grid)
    worst, witness = 0.0, None
    for i, x in enumerate(grid):
        for j, y in enumerate(grid):
            xy = float(table[i, j])
            for k, z in enumerate(grid):
                gap = abs(U(xy, float(z)) - U(float(x), float(table[j, k])))
                if gap > worst:
                    worst, witness = gap, (float(x), float(y), float(z))
    return Finding(name="associativity", max_violation=worst, witness=witness, tol=tol)


def search_associativity_witness(
    U: OperatorHandle, samples: int = 5000, seed: int = 0, tol: Optional[float] = None
) -> Finding:
    """
    Random triples, a fifth of the coordinates replaced by 0, e or 1, since
    border values are where constructions tend to break associativity.
    """
    tol = U.default_tol if tol is None else tol
    rng = np.random.default_rng(seed)
    triples = rng.uniform(0.0, 1.0, size=(samples, 3))
    special = np.array([0.0, U.neutral, 1.0])
    mask = rng.uniform(size=triples.shape) < 0.2
    triples[mask] = rng.choice(special, size=int(mask.sum()))

    worst, witness = 0.0, None
    for x, y, z in triples:
        x, y, z = float(x), float(y), float(z)
        gap = abs(U(U(x, y), z) - U(x, U(y, z)))
        if gap > worst:
            worst, witness = gap, (x, y, z)
    return Finding(name="associativity-random", max_violation=worst, witness=witness, tol=tol)


def check_axioms(
    U: OperatorHandle,
    grid_n: int = BINARY_GRID,
    tol: Optional[float] = None,
    ternary_n: int = TERNARY_GRID,
    seed: Optional[int] = None,
    samples: int = 5000,
) -> AxiomReport:
    tol = U.default_tol if tol is None else tol
    grid = unit_grid(grid_n)
    table = operator_table(U, grid)

    findings = [
        _commutativity(U, grid, table, tol),
        check_associativity(U, unit_grid(ternary_n), tol),
        _monotonicity(U, grid, table, tol),
        _neutrality(U, grid, tol),
    ]
    if seed is not None:
        findings.append(search_associativity_witness(U, samples=samples, seed=seed, tol=tol))

    report = AxiomReport(operator=U.name, findings=findings)
    logger.info(
        "Checked axioms",
        extra={
            "operator": U.name,
            "grid": grid_n,
            "ternary_grid": ternary_n,
            "violations": {f.name: f.max_violation for f in findings},
            "passed": report.passed,
        },
    )
    return report


def verify_pointwise(
    Ua: OperatorHandle, Ub: OperatorHandle, grid_n: int = BINARY_GRID, tol: Optional[float] = None
) -> DiffReport:
    tol = max(Ua.default_tol, Ub.default_tol) if tol is None else tol
    grid = unit_grid(grid_n)
    differences = np.abs(operator_table(Ua, grid) - operator_table(Ub, grid))
    worst, (i, j) = _argmax(differences)
    return DiffReport(max_difference=worst, witness=(grid[i], grid[j]), tol=tol)


def _near(point: Tuple[float, float], corners: Iterable[Tuple[float, float]], radius: float) -> bool:
    return any(max(abs(point[0] - cx), abs(point[1] - cy)) <= radius for cx, cy in corners)


def max_adjacent_jump(
    U: OperatorHandle,
    grid_n: int = BINARY_GRID,
    exclude: Sequence[Tuple[float, float]] = CORNERS,
    exclude_radius: float = 0.25,
) -> JumpReport:
    """
    Largest change between horizontally or vertically adjacent samples. Pairs
    with a point within exclude_radius (sup norm) of an excluded corner are
    reported separately, since a representable uninorm oscillates between 0
    and 1 in every neighbourhood of (0,1).
    """
    grid = unit_grid(grid_n)
    table = operator_table(U, grid)
    worst, witness, excluded_worst = 0.0, None, 0.0

    for i in range(grid_n):
        for j in range(grid_n):
            for di, dj in ((1, 0), (0, 1)):
                k, m = i + di, j + dj
                if k >= grid_n or m >= grid_n:
                    continue
                jump = abs(float(table[k, m] - table[i, j]))
                p, q = (grid[i], grid[j]), (grid[k], grid[m])
                if _near(p, exclude, exclude_radius) or _near(q, exclude, exclude_radius):
                    excluded_worst = max(excluded_worst, jump)
                elif jump > worst:
                    worst, witness = jump, (p[0], p[1], q[0], q[1])

    return JumpReport(max_jump=worst, witness=witness, excluded_max_jump=excluded_worst)


def is_internal(U: OperatorHandle, grid_n: int = BINARY_GRID, tol: Optional[float] = None) -> bool:
    tol = U.default_tol if tol is None else tol
    grid = unit_grid(grid_n)
    table = operator_table(U, grid)
    xs, ys = np.meshgrid(grid, grid, indexing="ij")
    return bool(np.all(np.minimum(np.abs(table - xs), np.abs(table - ys)) <= tol))


def is_pseudo_internal(U: OperatorHandle, grid_n: int = BINARY_GRID, tol: Optional[float] = None) -> bool:
    """Internal on the cross bands [0,e] x [e,1] and [e,1] x [0,e]."""
    tol = U.default_tol if tol is None else tol
    grid = unit_grid(grid_n)
    lower, upper = grid[grid <= U.neutral], grid[grid >= U.neutral]
    table = operator_table(U, lower, upper)
    xs, ys = np.meshgrid(lower, upper, indexing="ij")
    return bool(np.all(np.minimum(np.abs(table - xs), np.abs(table - ys)) <= tol))


def in_class_N(U: OperatorHandle, grid_n: int = BINARY_GRID, tol: Optional[float] = None) -> bool:
    """U(x,0) = 0 for every x < 1 and U(x,1) = 1 for every x > 0."""
    tol = U.default_tol if tol is None else tol
    grid = unit_grid(grid_n)
    bottom = all(abs(U(float(x), 0.0)) <= tol for x in grid[grid < 1.0])
    top = all(abs(U(float(x), 1.0) - 1.0) <= tol for x in grid[grid > 0.0])
    return bottom and top


def check_idempotent_rows(
    U: OperatorHandle, idempotents: Iterable[float], grid_n: int = BINARY_GRID, tol: Optional[float] = None
) -> Finding:
    tol = U.default_tol if tol is None else tol
    worst, witness = 0.0, None
    for a in idempotents:
        for x in unit_grid(grid_n):
            value = U(a, float(x))
            gap = min(abs(value - a), abs(value - x))
            if gap > worst:
                worst, witness = gap, (a, float(x))
    return Finding(name="idempotent-rows", max_violation=worst, witness=witness, tol=tol)


def check_gap_dichotomy(
    U: OperatorHandle,
    c: float,
    gap: Tuple[float, float],
    grid_n: int = BINARY_GRID,
    tol: Optional[float] = None,
) -> Finding:
    """
    For an idempotent c and an idempotent-free gap (a, b), U(c, x) is min(c, x)
    on all of the gap or max(c, x) on all of it.
    """
    tol = U.default_tol if tol is None else tol
    a, b = gap
    xs = np.linspace(a, b, grid_n)[1:-1]
    values = np.array([U(c, float(x)) for x in xs])
    off_min = np.abs(values - np.minimum(xs, c))
    off_max = np.abs(values - np.maximum(xs, c))
    if off_min.max() <= off_max.max():
        worst, (i,) = _argmax(off_min)
    else:
        worst, (i,) = _argmax(off_max)
    return Finding(name="gap-dichotomy", max_violation=worst, witness=(c, float(xs[i])), tol=tol)


def _block_samples(a: float, b: float, c: float, d: float, middle: float, n: int) -> np.ndarray:
    lower = np.linspace(a, b, n, endpoint=False) if a < b else np.array([])
    upper = np.linspace(d, c, n, endpoint=False)[::-1] if c < d else np.array([])
    return np.concatenate([lower, [middle], upper])


def check_closure(
    U: OperatorHandle,
    a: float,
    b: float,
    c: float,
    d: float,
    grid_n: int = 21,
    tol: Optional[float] = None,
) -> Finding:
    """For idempotent a <= b <= e <= c <= d, ([a,b) u {U(b,c)} u (c,d])^2 is closed under U."""
    tol = U.default_tol if tol is None else tol
    middle = U(b, c)
    samples = _block_samples(a, b, c, d, middle, grid_n)

    def distance(w: float) -> float:
        candidates = [abs(w - middle)]
        if a < b:
            candidates.append(0.0 if a <= w < b else min(abs(w - a), abs(w - b)))
        if c < d:
            candidates.append(0.0 if c < w <= d else min(abs(w - c), abs(w - d)))
        return min(candidates)

    worst, witness = 0.0, None
    for x in samples:
        for y in samples:
            gap = distance(U(float(x), float(y)))
            if gap > worst:
                worst, witness = gap, (float(x), float(y))
    return Finding(name="closure", max_violation=worst, witness=witness, tol=tol)
