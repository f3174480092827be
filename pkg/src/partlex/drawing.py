"""Flat-geometry semantics and SVG rendering for the drawing primitives.

A drawing program evaluates to line segments and circles in scene units.
Transforms are uniform-scale affine maps built by ``graphics_matrix``.
Everything here is a pure function of its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import EvalError
from .sexpr import LIT, PRIM, Node

DRAWING_BASE_SYMBOLS = {
    "line": 0,
    "circle": 0,
    "square": 0,
    "scaled_rect": 2,
    "graphics_matrix": 4,
    "apply_transform": 2,
    "repeat": 3,
    "connect": 2,
}

_ROUND = 9


@dataclass(frozen=True)
class Geometry:
    """Canonicalized flat geometry: sorted, deduplicated segments and circles."""

    segments: tuple = ()  # (x1, y1, x2, y2)
    circles: tuple = ()  # (cx, cy, r)

    def is_empty(self):
        return not self.segments and not self.circles

    def element_count(self):
        return len(self.segments) + len(self.circles)

    def bounds(self):
        if self.is_empty():
            raise EvalError("empty geometry has no bounds")
        xs, ys = [], []
        for x1, y1, x2, y2 in self.segments:
            xs += [x1, x2]
            ys += [y1, y2]
        for cx, cy, r in self.circles:
            xs += [cx - r, cx + r]
            ys += [cy - r, cy + r]
        return min(xs), min(ys), max(xs), max(ys)


def canonical_geometry(segments, circles) -> Geometry:
    """Sort endpoints, sort element lists, drop duplicates (after rounding)."""
    segs = set()
    for x1, y1, x2, y2 in segments:
        a = (round(x1, _ROUND), round(y1, _ROUND))
        b = (round(x2, _ROUND), round(y2, _ROUND))
        if b < a:
            a, b = b, a
        segs.add(a + b)
    circs = {(round(cx, _ROUND), round(cy, _ROUND), round(r, _ROUND)) for cx, cy, r in circles}
    return Geometry(tuple(sorted(segs)), tuple(sorted(circs)))


def identity_matrix():
    return ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))


def graphics_matrix(scale, theta, tx, ty):
    """Affine map: scale, then rotate by theta (radians), then translate."""
    if scale <= 0:
        raise EvalError(f"non-positive scale {scale!r}")
    c, s = math.cos(theta), math.sin(theta)
    return (
        (scale * c, -scale * s, tx),
        (scale * s, scale * c, ty),
        (0.0, 0.0, 1.0),
    )


def mat_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def mat_apply(m, x, y):
    return (
        m[0][0] * x + m[0][1] * y + m[0][2],
        m[1][0] * x + m[1][1] * y + m[1][2],
    )


def mat_scale(m):
    # Uniform scale factor of the linear part.
    return math.hypot(m[0][0], m[1][0])


class _Raw:
    """Mutable geometry accumulator used during evaluation."""

    __slots__ = ("segments", "circles")

    def __init__(self):
        self.segments = []
        self.circles = []

    def transformed(self, m):
        out = _Raw()
        for x1, y1, x2, y2 in self.segments:
            out.segments.append(mat_apply(m, x1, y1) + mat_apply(m, x2, y2))
        s = mat_scale(m)
        for cx, cy, r in self.circles:
            out.circles.append(mat_apply(m, cx, cy) + (r * s,))
        return out

    def extend(self, other):
        self.segments.extend(other.segments)
        self.circles.extend(other.circles)


def _require_literal(node, what):
    if node.kind != LIT:
        raise EvalError(f"{what} must be a numeric literal, got {node!r}")
    return node.value


def _eval_matrix(node):
    if node.kind != PRIM or node.name != "graphics_matrix":
        raise EvalError(f"expected graphics_matrix, got {node!r}")
    args = [_require_literal(c, "matrix parameter") for c in node.children]
    return graphics_matrix(*args)


def _eval_shape(node) -> _Raw:
    if node.kind != PRIM:
        raise EvalError(f"cannot evaluate {node!r}; expand subroutines first")
    name = node.name
    raw = _Raw()
    if name == "line":
        raw.segments.append((0.0, 0.0, 1.0, 0.0))
    elif name == "circle":
        raw.circles.append((0.0, 0.0, 1.0))
    elif name == "square":
        h = 0.5
        corners = [(-h, -h), (h, -h), (h, h), (-h, h)]
        for i in range(4):
            raw.segments.append(corners[i] + corners[(i + 1) % 4])
    elif name == "scaled_rect":
        w = _require_literal(node.children[0], "rect width")
        h = _require_literal(node.children[1], "rect height")
        if w <= 0 or h <= 0:
            raise EvalError(f"non-positive rectangle dimensions ({w}, {h})")
        hw, hh = w / 2.0, h / 2.0
        corners = [(-hw, -hh), (hw, -hh), (hw, hh), (-hw, hh)]
        for i in range(4):
            raw.segments.append(corners[i] + corners[(i + 1) % 4])
    elif name == "apply_transform":
        inner = _eval_shape(node.children[0])
        m = _eval_matrix(node.children[1])
        raw = inner.transformed(m)
    elif name == "repeat":
        inner = _eval_shape(node.children[0])
        n = _require_literal(node.children[1], "repeat count")
        if not isinstance(n, int) or n < 0:
            raise EvalError(f"repeat count must be a non-negative int, got {n!r}")
        m = _eval_matrix(node.children[2])
        acc = identity_matrix()
        for _ in range(n):
            acc = mat_mul(m, acc)
            raw.extend(inner.transformed(acc))
    elif name == "connect":
        raw = _eval_shape(node.children[0])
        raw.extend(_eval_shape(node.children[1]))
    elif name == "graphics_matrix":
        raise EvalError("a bare matrix is not a shape")
    else:
        raise EvalError(f"no drawing semantics for symbol {name!r}")
    return raw


def eval_drawing(program: Node) -> Geometry:
    """Evaluate a base-primitive drawing program to canonical geometry.

    Subroutine calls must be macro-expanded before evaluation (see
    ``library.expand_program``).
    """
    raw = _eval_shape(program)
    return canonical_geometry(raw.segments, raw.circles)


def geometry_equal(a: Geometry, b: Geometry, tol: float = 1e-6) -> bool:
    """Elementwise comparison after canonical ordering."""
    if len(a.segments) != len(b.segments) or len(a.circles) != len(b.circles):
        return False
    for ea, eb in zip(a.segments + a.circles, b.segments + b.circles):
        for va, vb in zip(ea, eb):
            if abs(va - vb) >= tol:
                return False
    return True


def render_drawing_svg(geometry: Geometry, stroke_width: float = 0.06, padding: float = 0.5) -> str:
    """Emit an SVG 1.1 document, one element per geometry element.

    Scene y-axis points up; SVG's points down, so y is negated once here.
    Output is deterministic for a given geometry.
    """
    if geometry.is_empty():
        raise EvalError("cannot render empty geometry")
    x0, y0, x1, y1 = geometry.bounds()
    x0 -= padding
    y0 -= padding
    x1 += padding
    y1 += padding
    w, h = x1 - x0, y1 - y0

    def f(v):
        return f"{v:.4f}"

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{f(x0)} {f(-y1)} {f(w)} {f(h)}">',
        f'<g fill="none" stroke="black" stroke-width="{f(stroke_width)}" '
        'stroke-linecap="round">',
    ]
    for sx1, sy1, sx2, sy2 in geometry.segments:
        parts.append(
            f'<path d="M {f(sx1)} {f(-sy1)} L {f(sx2)} {f(-sy2)}"/>'
        )
    for cx, cy, r in geometry.circles:
        parts.append(f'<circle cx="{f(cx)}" cy="{f(-cy)}" r="{f(r)}"/>')
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
