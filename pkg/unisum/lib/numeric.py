import math
from typing import Callable, Optional

import numpy as np
from scipy.optimize import bisect

from unisum.constants import INVERSION_MAXITER, INVERSION_XTOL, REPORT_DIGITS
from unisum.lib.errors import DomainError


def check_unit(*values: float) -> None:
    for value in values:
        if not (0.0 <= value <= 1.0) or math.isnan(value):
            raise DomainError(f"Argument {value!r} is outside the unit interval")


def clamp_unit(value: float) -> float:
    return min(1.0, max(0.0, value))


def unit_grid(n: int, interior: bool = False) -> np.ndarray:
    """
    Uniform sample of [0,1] with n points. With interior=True the two
    endpoints are dropped, leaving n-2 points of (0,1).
    """
    if n < 2:
        raise DomainError(f"Grid needs at least 2 points, got {n}")
    grid = np.linspace(0.0, 1.0, n)
    return grid[1:-1] if interior else grid


def invert_monotone(
    fn: Callable[[float], float],
    target: float,
    increasing: bool,
    lo: float = 0.0,
    hi: float = 1.0,
    xtol: float = INVERSION_XTOL,
    maxiter: int = INVERSION_MAXITER,
) -> float:
    """
    Solve fn(x) = target on [lo, hi] for a continuous strictly monotone fn.
    Targets beyond the range of fn are clamped to the matching endpoint.
    """
    f_lo, f_hi = fn(lo), fn(hi)
    if not increasing:
        f_lo, f_hi = -f_lo, -f_hi
        target = -target
    if target <= f_lo:
        return lo
    if target >= f_hi:
        return hi

    sign = 1.0 if increasing else -1.0
    return bisect(
        lambda x: sign * fn(x) - target, lo, hi, xtol=xtol, maxiter=maxiter
    )


def locate_switch(
    predicate: Callable[[float], bool],
    lo: float,
    hi: float,
    xtol: float = INVERSION_XTOL,
    maxiter: int = INVERSION_MAXITER,
) -> float:
    """
    Boundary of a monotone predicate on [lo, hi]: predicate(lo) must differ
    from predicate(hi). Returns a point within xtol of the switch.
    """
    at_lo = predicate(lo)
    if at_lo == predicate(hi):
        raise DomainError(f"Predicate does not switch on [{lo}, {hi}]")

    def signed(x: float) -> float:
        return 0.5 if predicate(x) == at_lo else -0.5

    return bisect(signed, lo, hi, xtol=xtol, maxiter=maxiter)


def format_number(value: float, digits: int = REPORT_DIGITS) -> str:
    return f"{value:.{digits}g}"


def operator_table(op: Callable[[float, float], float], xs: np.ndarray, ys: Optional[np.ndarray] = None) -> np.ndarray:
    """Values op(xs[i], ys[j]) as an (len(xs), len(ys)) array."""
    ys = xs if ys is None else ys
    return np.array([[op(float(x), float(y)) for y in ys] for x in xs])
