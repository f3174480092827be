"""Symbolic program representation shared by both graphics DSLs.

Programs are trees of fixed-arity named nodes plus numeric literals and
(inside subroutine bodies only) parameter placeholders. The surface syntax
is s-expressions: ``(connect (line) (circle))``. Printing and parsing
round-trip exactly; numeric literals are printed with ``repr`` so floats
survive a round trip bit-for-bit.
"""

from __future__ import annotations

import re

from .errors import ParseError

PRIM = "prim"
CALL = "call"
LIT = "lit"
VAR = "var"

_NUMBER_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


class Node:
    """One node of a program tree.

    kind is one of ``prim`` (named primitive or operator), ``call``
    (subroutine invocation), ``lit`` (int or float literal) and ``var``
    (parameter placeholder, only legal inside subroutine bodies).
    """

    __slots__ = ("kind", "name", "children", "value")

    def __init__(self, kind, name="", children=(), value=None):
        self.kind = kind
        self.name = name
        self.children = tuple(children)
        self.value = value

    @property
    def arity(self):
        return len(self.children)

    def __eq__(self, other):
        if not isinstance(other, Node):
            return NotImplemented
        if self.kind != other.kind or self.name != other.name:
            return False
        if self.kind == LIT:
            # 4 and 4.0 are distinct literals.
            return type(self.value) is type(other.value) and self.value == other.value
        return self.children == other.children

    def __hash__(self):
        if self.kind == LIT:
            return hash((self.kind, type(self.value).__name__, self.value))
        return hash((self.kind, self.name, self.children))

    def __repr__(self):
        return f"Node({print_sexpr(self)!r})"


def prim(name, *children):
    return Node(PRIM, name, children)


def call(name, *children):
    return Node(CALL, name, children)


def lit(value):
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise TypeError(f"literal must be int or float, got {value!r}")
    return Node(LIT, value=value)


def var(name):
    return Node(VAR, name)


def _format_number(value):
    return repr(value)


def print_sexpr(node: Node) -> str:
    """Render a program tree as s-expression source (inverse of parse)."""
    if node.kind == LIT:
        return _format_number(node.value)
    if node.kind == VAR:
        return "$" + node.name
    if node.children:
        inner = " ".join(print_sexpr(c) for c in node.children)
        return f"({node.name} {inner})"
    return f"({node.name})"


def _tokenize_source(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            tokens.append((c, i))
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            tokens.append((text[i:j], i))
            i = j
    return tokens


def parse_sexpr(text: str, inventory: dict, allow_vars: bool = False) -> Node:
    """Parse s-expression source into a program tree.

    ``inventory`` maps symbol name -> (arity, kind) where kind is ``prim``
    or ``call``. Unknown head symbols and arity mismatches are rejected.
    """
    tokens = _tokenize_source(text)
    if not tokens:
        raise ParseError("empty input")
    pos = 0

    def parse_one():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of input", len(text))
        tok, at = tokens[pos]
        pos += 1
        if tok == ")":
            raise ParseError("unexpected ')'", at)
        if tok == "(":
            if pos >= len(tokens):
                raise ParseError("unterminated '('", at)
            head, head_at = tokens[pos]
            pos += 1
            if head in "()":
                raise ParseError("expected symbol after '('", head_at)
            children = []
            while True:
                if pos >= len(tokens):
                    raise ParseError("unterminated '('", at)
                if tokens[pos][0] == ")":
                    pos += 1
                    break
                children.append(parse_one())
            if head not in inventory:
                raise ParseError(f"unknown symbol {head!r}", head_at)
            arity, kind = inventory[head]
            if arity != len(children):
                raise ParseError(
                    f"{head!r} takes {arity} arguments, got {len(children)}", head_at
                )
            return Node(kind, head, children)
        if tok.startswith("$"):
            if not allow_vars:
                raise ParseError(f"variable {tok!r} not allowed here", at)
            return Node(VAR, tok[1:])
        if _NUMBER_RE.match(tok):
            if re.search(r"[.eE]", tok):
                return lit(float(tok))
            return lit(int(tok))
        raise ParseError(f"bare atom {tok!r}; primitives are written (name ...)", at)

    result = parse_one()
    if pos != len(tokens):
        raise ParseError("trailing input", tokens[pos][1])
    return result


def tokenize(program: Node) -> list:
    """Preorder traversal emitting named-node symbols.

    Literal and placeholder nodes are skipped, so the result is the
    name-bearing skeleton of the program.
    """
    out = []
    stack = [program]
    while stack:
        node = stack.pop()
        if node.kind in (PRIM, CALL):
            out.append(node.name)
        stack.extend(reversed(node.children))
    return out


def program_length(program: Node) -> int:
    """Number of named tokens in the program (length of tokenize)."""
    return len(tokenize(program))


def subtree_token_count(program: Node) -> int:
    return program_length(program)
