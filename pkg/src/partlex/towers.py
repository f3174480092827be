"""Cursor/block semantics and SVG rendering for the tower primitives.

A tower program is a continuation-style chain: each block primitive places a
block at the current cursor column and continues with its single child;
``left``/``right`` shift the cursor; ``done`` terminates. Blocks drop onto
the 20x20 grid with deterministic column gravity: a block rests at the
lowest height at which its whole footprint is at or above the tops of the
columns it covers (a 2-wide block bridging uneven columns rests on the
higher one, leaving a gap beneath the other cell).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EvalError
from .sexpr import LIT, PRIM, Node

GRID = 20
CURSOR_START = 10

TOWER_BASE_SYMBOLS = {
    "vertical_red": 1,
    "horizontal_blue": 1,
    "left": 2,
    "right": 2,
    "done": 0,
}

# (width, height) footprints.
BLOCK_SHAPES = {
    "vertical_red": (1, 2),
    "horizontal_blue": (2, 1),
}


@dataclass(frozen=True)
class BlockPlacement:
    kind: str  # "vertical_red" | "horizontal_blue"
    x: int  # leftmost column
    y: int  # bottom row

    @property
    def cells(self):
        w, h = BLOCK_SHAPES[self.kind]
        return tuple(
            (self.x + dx, self.y + dy) for dy in range(h) for dx in range(w)
        )


def eval_tower(program: Node) -> list:
    """Run a base-primitive tower program, returning placements in order.

    Raises EvalError if the cursor leaves the grid or any block footprint
    extends beyond the 20x20 grid (the error message carries the index of
    the offending placement).
    """
    tops = [0] * GRID  # next free row per column
    placements = []
    cursor = CURSOR_START
    node = program
    while True:
        if node.kind != PRIM:
            raise EvalError(f"cannot evaluate {node!r}; expand subroutines first")
        name = node.name
        if name == "done":
            return placements
        if name in ("left", "right"):
            count = node.children[0]
            if count.kind != LIT or not isinstance(count.value, int) or count.value < 0:
                raise EvalError(f"move count must be a non-negative int literal: {count!r}")
            cursor += count.value if name == "right" else -count.value
            if not 0 <= cursor < GRID:
                raise EvalError(f"cursor moved out of bounds to column {cursor}")
            node = node.children[1]
            continue
        if name in BLOCK_SHAPES:
            w, h = BLOCK_SHAPES[name]
            if cursor + w > GRID:
                raise EvalError(
                    f"placement {len(placements)} extends beyond the {GRID}x{GRID} grid"
                )
            y = max(tops[cursor + dx] for dx in range(w))
            if y + h > GRID:
                raise EvalError(
                    f"placement {len(placements)} extends beyond the {GRID}x{GRID} grid"
                )
            for dx in range(w):
                tops[cursor + dx] = y + h
            placements.append(BlockPlacement(name, cursor, y))
            node = node.children[0]
            continue
        raise EvalError(f"no tower semantics for symbol {name!r}")


def occupancy_grid(placements) -> list:
    """20x20 boolean grid (row-major, row 0 at the bottom)."""
    grid = [[False] * GRID for _ in range(GRID)]
    for p in placements:
        for x, y in p.cells:
            if grid[y][x]:
                raise EvalError(f"overlapping placement at cell ({x}, {y})")
            grid[y][x] = True
    return grid


def occupancy_bits(placements) -> list:
    """Serialize occupancy as 20 bit strings, top row first."""
    grid = occupancy_grid(placements)
    return ["".join("1" if c else "0" for c in row) for row in reversed(grid)]


_FILL = {"vertical_red": "#c0392b", "horizontal_blue": "#2e6da4"}


def render_tower_svg(placements, cell: int = 20) -> str:
    """One rectangle per block on a 20x20-cell canvas; deterministic output."""
    occupancy_grid(placements)  # validates non-overlap
    size = GRID * cell
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]
    for p in placements:
        w, h = BLOCK_SHAPES[p.kind]
        px = p.x * cell
        py = size - (p.y + h) * cell  # flip y so row 0 is the floor
        parts.append(
            f'<rect x="{px}" y="{py}" width="{w * cell}" height="{h * cell}" '
            f'fill="{_FILL[p.kind]}" stroke="black" stroke-width="1"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
