"""Flat-geometry semantics of the drawing primitives and SVG rendering."""

import math

import pytest

from partlex.drawing import (
    eval_drawing,
    geometry_equal,
    graphics_matrix,
    mat_apply,
    mat_mul,
    render_drawing_svg,
)
from partlex.errors import EvalError
from partlex.sexpr import lit, prim


def gm(scale, theta, tx, ty):
    return prim("graphics_matrix", lit(float(scale)), lit(float(theta)), lit(float(tx)), lit(float(ty)))


def tf(shape, scale, theta, tx, ty):
    return prim("apply_transform", shape, gm(scale, theta, tx, ty))


def test_unit_line():
    geom = eval_drawing(prim("line"))
    assert geom.segments == ((0.0, 0.0, 1.0, 0.0),)
    assert geom.circles == ()


def test_unit_circle_and_square():
    assert eval_drawing(prim("circle")).circles == ((0.0, 0.0, 1.0),)
    square = eval_drawing(prim("square"))
    assert len(square.segments) == 4
    assert square.bounds() == (-0.5, -0.5, 0.5, 0.5)


def test_scaled_rect_dimensions():
    geom = eval_drawing(prim("scaled_rect", lit(2.0), lit(0.5)))
    assert geom.bounds() == (-1.0, -0.25, 1.0, 0.25)
    with pytest.raises(EvalError):
        eval_drawing(prim("scaled_rect", lit(-1.0), lit(1.0)))


def test_identity_transform_is_a_no_op():
    base = eval_drawing(prim("circle"))
    transformed = eval_drawing(tf(prim("circle"), 1.0, 0.0, 0.0, 0.0))
    assert geometry_equal(base, transformed)


def test_transform_order_scale_rotate_translate():
    # A unit line scaled by 2, rotated a quarter turn, moved to (3, 4).
    geom = eval_drawing(tf(prim("line"), 2.0, math.pi / 2, 3.0, 4.0))
    ((x1, y1, x2, y2),) = geom.segments
    assert abs(x1 - 3.0) < 1e-9 and abs(y1 - 4.0) < 1e-9
    assert abs(x2 - 3.0) < 1e-9 and abs(y2 - 6.0) < 1e-9


def test_transform_composition_matches_matrix_product():
    nested = eval_drawing(tf(tf(prim("square"), 2.0, 0.3, 1.0, -1.0), 0.5, 1.1, -2.0, 0.5))
    outer = graphics_matrix(0.5, 1.1, -2.0, 0.5)
    inner = graphics_matrix(2.0, 0.3, 1.0, -1.0)
    composed = mat_mul(outer, inner)
    expected = []
    for x1, y1, x2, y2 in eval_drawing(prim("square")).segments:
        expected.append(mat_apply(composed, x1, y1) + mat_apply(composed, x2, y2))
    from partlex.drawing import canonical_geometry

    assert geometry_equal(nested, canonical_geometry(expected, []), tol=1e-9)


def test_repeat_zero_is_empty():
    geom = eval_drawing(prim("repeat", prim("circle"), lit(0), gm(1.0, 0.0, 2.0, 0.0)))
    assert geom.is_empty()


def test_repeat_one_equals_single_transform():
    matrix_args = (1.0, 0.4, 1.5, -0.5)
    once = eval_drawing(prim("repeat", prim("circle"), lit(1), gm(*matrix_args)))
    applied = eval_drawing(tf(prim("circle"), *matrix_args))
    assert geometry_equal(once, applied)


def test_repeat_applies_cumulative_powers_without_identity_copy():
    geom = eval_drawing(prim("repeat", prim("circle"), lit(3), gm(1.0, 0.0, 2.0, 0.0)))
    # Copies at M^1, M^2, M^3 only: x = 2, 4, 6 (no untransformed copy at 0).
    assert geom.circles == ((2.0, 0.0, 1.0), (4.0, 0.0, 1.0), (6.0, 0.0, 1.0))


def test_repeat_count_must_be_non_negative_int():
    with pytest.raises(EvalError):
        eval_drawing(prim("repeat", prim("circle"), lit(2.0), gm(1.0, 0.0, 1.0, 0.0)))


def test_connect_is_union():
    geom = eval_drawing(prim("connect", prim("line"), prim("circle")))
    assert geom.element_count() == 2


def test_bare_matrix_is_not_a_shape():
    with pytest.raises(EvalError):
        eval_drawing(gm(1.0, 0.0, 0.0, 0.0))


def test_duplicate_elements_are_canonicalized_away():
    geom = eval_drawing(prim("connect", prim("line"), prim("line")))
    assert geom.segments == ((0.0, 0.0, 1.0, 0.0),)


def test_geometry_equal_tolerance():
    a = eval_drawing(prim("circle"))
    b = eval_drawing(tf(prim("circle"), 1.0, 0.0, 5e-7, 0.0))
    c = eval_drawing(tf(prim("circle"), 1.0, 0.0, 5e-5, 0.0))
    assert geometry_equal(a, b, tol=1e-6)
    assert not geometry_equal(a, c, tol=1e-6)


def test_svg_single_circle():
    svg = render_drawing_svg(eval_drawing(prim("circle")))
    assert svg.count("<circle") == 1
    assert svg.count("<path") == 0
    # Unit circle bounds [-1, 1]^2 plus the default 0.5 padding.
    assert 'viewBox="-1.5000 -1.5000 3.0000 3.0000"' in svg


def test_svg_is_deterministic_with_one_element_per_geometry_element():
    geom = eval_drawing(prim("connect", prim("square"), prim("circle")))
    svg = render_drawing_svg(geom)
    assert svg == render_drawing_svg(geom)
    assert svg.count("<path") == 4 and svg.count("<circle") == 1


def test_svg_rejects_empty_geometry():
    geom = eval_drawing(prim("repeat", prim("circle"), lit(0), gm(1.0, 0.0, 1.0, 0.0)))
    with pytest.raises(EvalError):
        render_drawing_svg(geom)
