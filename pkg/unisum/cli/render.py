from pathlib import Path
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from unisum.constants import REPORT_DIGITS
from unisum.lib.logging import logger
from unisum.lib.numeric import operator_table, unit_grid
from unisum.uninorms.models import OperatorHandle


class RenderResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    csv_path: Path
    pgm_path: Path
    grid: int
    max_jump: float = Field(..., description="Largest jump kept in the overlay")
    jump_pixels: int = Field(..., description="Number of non-zero overlay pixels")


def jump_field(table: np.ndarray, floor: float) -> np.ndarray:
    """
    Per-sample magnitude of the largest change to a horizontal or vertical
    neighbour. Changes up to floor are continuous variation and read as 0.
    """
    field = np.zeros_like(table)
    down = np.abs(np.diff(table, axis=0))
    right = np.abs(np.diff(table, axis=1))
    field[:-1, :] = np.maximum(field[:-1, :], down)
    field[1:, :] = np.maximum(field[1:, :], down)
    field[:, :-1] = np.maximum(field[:, :-1], right)
    field[:, 1:] = np.maximum(field[:, 1:], right)
    field[field <= floor] = 0.0
    return field


def write_csv(path: Path, grid: np.ndarray, table: np.ndarray) -> None:
    xs, ys = np.meshgrid(grid, grid, indexing="ij")
    rows = np.column_stack([xs.ravel(), ys.ravel(), table.ravel()])
    np.savetxt(path, rows, delimiter=",", header="x,y,value", comments="", fmt=f"%.{REPORT_DIGITS}g")


def write_pgm(path: Path, field: np.ndarray) -> None:
    # field[i, j] belongs to (x_i, y_j); the image has x to the right and y = 1 on the top row
    image = np.clip(np.rint(255.0 * field.T[::-1, :]), 0, 255).astype(np.uint8)
    height, width = image.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{width} {height}\n255\n".encode("ascii"))
        f.write(image.tobytes())


def render(U: OperatorHandle, grid_n: int, out_prefix: str, floor: Optional[float] = None) -> RenderResult:
    """
    Writes PREFIX.csv with the sampled values of U and PREFIX.pgm with the
    jump magnitude field, so lines of discontinuity show up as bright pixels.
    The default floor is ten grid steps.
    """
    grid = unit_grid(grid_n)
    floor = 10.0 / (grid_n - 1) if floor is None else floor
    table = operator_table(U, grid)
    field = jump_field(table, floor)

    csv_path, pgm_path = _paths(out_prefix)
    write_csv(csv_path, grid, table)
    write_pgm(pgm_path, field)

    result = RenderResult(
        csv_path=csv_path,
        pgm_path=pgm_path,
        grid=grid_n,
        max_jump=float(field.max()),
        jump_pixels=int(np.count_nonzero(field)),
    )
    logger.info(
        "Rendered operator",
        extra={
            "operator": U.name,
            "grid": grid_n,
            "csv": str(csv_path),
            "pgm": str(pgm_path),
            "max_jump": result.max_jump,
            "jump_pixels": result.jump_pixels,
        },
    )
    return result


def _paths(out_prefix: str) -> Tuple[Path, Path]:
    prefix = Path(out_prefix)
    return prefix.with_name(prefix.name + ".csv"), prefix.with_name(prefix.name + ".pgm")
