"""Program tree representation, printing/parsing, and tokenization."""

import pytest
from hypothesis import given, strategies as st

from partlex.drawing import DRAWING_BASE_SYMBOLS
from partlex.errors import ParseError
from partlex.sexpr import (
    Node,
    PRIM,
    lit,
    parse_sexpr,
    prim,
    print_sexpr,
    program_length,
    tokenize,
    var,
)

INVENTORY = {name: (arity, PRIM) for name, arity in DRAWING_BASE_SYMBOLS.items()}


def test_print_parse_round_trip():
    text = "(connect (line) (apply_transform (circle) (graphics_matrix 1.5 0.0 -2.0 0.25)))"
    tree = parse_sexpr(text, INVENTORY)
    assert print_sexpr(tree) == text


def test_float_literals_survive_round_trip_bit_for_bit():
    value = 0.1 + 0.2  # not representable as a short decimal
    tree = prim("scaled_rect", lit(value), lit(1.0))
    reparsed = parse_sexpr(print_sexpr(tree), INVENTORY)
    assert reparsed.children[0].value == value


def test_int_and_float_literals_are_distinct():
    assert lit(4) != lit(4.0)
    assert parse_sexpr("(scaled_rect 4 4.0)", INVENTORY).children[0].value == 4


def test_tokenize_is_preorder_and_skips_literals():
    text = "(repeat (connect (line) (circle)) 3 (graphics_matrix 1.0 0.0 2.0 0.0))"
    tree = parse_sexpr(text, INVENTORY)
    assert tokenize(tree) == ["repeat", "connect", "line", "circle", "graphics_matrix"]
    assert program_length(tree) == 5


def test_literal_rejects_non_numbers():
    with pytest.raises(TypeError):
        lit(True)
    with pytest.raises(TypeError):
        lit("3")


@pytest.mark.parametrize(
    "text",
    [
        "",
        "(line",
        "(line))",
        "(unknown_symbol)",
        "(connect (line))",  # arity mismatch
        "line",  # bare atom
        "(connect (line) $x)",  # variable outside a subroutine body
        "()",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_sexpr(text, INVENTORY)


def test_variables_allowed_only_when_requested():
    tree = parse_sexpr("(connect (line) $x)", INVENTORY, allow_vars=True)
    assert tree.children[1] == var("x")
    assert print_sexpr(tree) == "(connect (line) $x)"


@st.composite
def drawing_trees(draw, depth=3):
    ints = st.integers(min_value=0, max_value=5)
    floats = st.floats(min_value=-10, max_value=10, allow_nan=False).map(float)
    matrix = st.builds(
        lambda a, b, c, d: prim("graphics_matrix", lit(a), lit(b), lit(c), lit(d)),
        floats, floats, floats, floats,
    )
    leaf = st.sampled_from(["line", "circle", "square"]).map(prim)
    if depth == 0:
        return draw(leaf)
    sub = drawing_trees(depth=depth - 1)
    node = st.one_of(
        leaf,
        st.builds(lambda s, m: prim("apply_transform", s, m), sub, matrix),
        st.builds(lambda s, n, m: prim("repeat", s, lit(n), m), sub, ints, matrix),
        st.builds(lambda a, b: prim("connect", a, b), sub, sub),
    )
    return draw(node)


@given(drawing_trees())
def test_round_trip_property(tree):
    assert parse_sexpr(print_sexpr(tree), INVENTORY) == tree


@given(drawing_trees())
def test_tokenize_ignores_literal_values(tree):
    def strip_literals(node):
        if node.kind == "lit":
            return lit(0)
        return Node(node.kind, node.name, [strip_literals(c) for c in node.children], node.value)

    assert tokenize(tree) == tokenize(strip_literals(tree))
