"""Cursor/block semantics, gravity, and grid bounds for tower programs."""

import pytest

from partlex.errors import EvalError
from partlex.sexpr import lit, prim
from partlex.towers import (
    BlockPlacement,
    eval_tower,
    occupancy_bits,
    occupancy_grid,
    render_tower_svg,
)


def build(*steps):
    """Chain step tuples ('v'|'h'|('l', n)|('r', n)) into a program."""
    node = prim("done")
    for step in reversed(steps):
        if step == "v":
            node = prim("vertical_red", node)
        elif step == "h":
            node = prim("horizontal_blue", node)
        else:
            op, count = step
            name = "left" if op == "l" else "right"
            node = prim(name, lit(count), node)
    return node


def test_horizontal_at_start_occupies_columns_10_and_11():
    placements = eval_tower(build("h"))
    assert placements == [BlockPlacement("horizontal_blue", 10, 0)]
    assert placements[0].cells == ((10, 0), (11, 0))


def test_vertical_stacks_on_horizontal():
    placements = eval_tower(build("h", "v"))
    assert placements[1] == BlockPlacement("vertical_red", 10, 1)
    assert placements[1].cells == ((10, 1), (10, 2))


def test_bridging_block_rests_on_the_higher_column():
    # Column 10 rises to height 2; a 2-wide block over columns 10-11 rests
    # at y=2, leaving a gap beneath its right cell.
    placements = eval_tower(build("v", "h"))
    assert placements[1] == BlockPlacement("horizontal_blue", 10, 2)
    grid = occupancy_grid(placements)
    assert not grid[0][11] and not grid[1][11] and grid[2][11]


def test_gravity_uses_the_whole_footprint():
    # Raise column 11 instead: the same bridge must still rest on top of it.
    placements = eval_tower(build(("r", 1), "v", ("l", 1), "h"))
    assert placements[-1] == BlockPlacement("horizontal_blue", 10, 2)


def test_cursor_moves_are_relative_and_start_at_column_10():
    placements = eval_tower(build(("l", 4), "v", ("r", 8), "v"))
    assert [p.x for p in placements] == [6, 14]


def test_cursor_out_of_bounds_raises():
    with pytest.raises(EvalError):
        eval_tower(build(("l", 11), "v"))
    with pytest.raises(EvalError):
        eval_tower(build(("r", 10), "v"))


def test_block_footprint_must_fit_the_grid():
    # Column 19 exists, but a 2-wide block there would spill to column 20.
    with pytest.raises(EvalError):
        eval_tower(build(("r", 9), "h"))


def test_stack_may_reach_but_not_exceed_the_top():
    assert len(eval_tower(build(*["v"] * 10))) == 10  # height exactly 20
    with pytest.raises(EvalError):
        eval_tower(build(*["v"] * 11))


def test_move_count_must_be_non_negative_int_literal():
    with pytest.raises(EvalError):
        eval_tower(prim("left", lit(-1), prim("done")))
    with pytest.raises(EvalError):
        eval_tower(prim("right", lit(2.0), prim("done")))


def test_unexpanded_calls_are_rejected():
    from partlex.sexpr import call

    with pytest.raises(EvalError):
        eval_tower(call("arch", prim("done")))


def test_occupancy_bits_shape_and_orientation():
    bits = occupancy_bits(eval_tower(build("v")))
    assert len(bits) == 20 and all(len(row) == 20 for row in bits)
    # Row 0 is printed last (bottom of the grid).
    assert bits[-1][10] == "1" and bits[-2][10] == "1" and bits[-3][10] == "0"


def test_overlap_detection():
    clash = [BlockPlacement("vertical_red", 5, 0), BlockPlacement("horizontal_blue", 4, 1)]
    with pytest.raises(EvalError):
        occupancy_grid(clash)


def test_svg_one_rect_per_block_plus_background():
    placements = eval_tower(build("h", "v", "v"))
    svg = render_tower_svg(placements)
    assert svg.count("<rect") == len(placements) + 1
    assert svg == render_tower_svg(placements)
