"""Shared machinery for subdomain template definitions."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DataError
from ..library import ConceptLibrary, Subroutine
from ..sexpr import CALL, LIT, Node, PRIM, lit, prim, var


def num(x):
    """Coerce a Python number or Node into an expression node."""
    if isinstance(x, Node):
        return x
    return lit(x)


def fnum(x):
    if isinstance(x, Node):
        return x
    return lit(float(x))


# ---------------------------------------------------------------- drawings

def gm(scale, theta, tx, ty):
    return prim("graphics_matrix", fnum(scale), fnum(theta), fnum(tx), fnum(ty))


def tf(shape, scale, theta, tx, ty):
    return prim("apply_transform", shape, gm(scale, theta, tx, ty))


def rep(shape, n, matrix):
    return prim("repeat", shape, num(n), matrix)


def connect(*shapes):
    if not shapes:
        raise DataError("connect needs at least one shape")
    node = shapes[-1]
    for s in reversed(shapes[:-1]):
        node = prim("connect", s, node)
    return node


# ------------------------------------------------------------------ towers

def chain(steps, tail):
    """Build a continuation chain from (symbol, ...) step tuples.

    Steps: ("v",), ("h",), ("l", n), ("r", n), ("call", name, *args).
    """
    node = tail
    for step in reversed(steps):
        op = step[0]
        if op == "v":
            node = prim("vertical_red", node)
        elif op == "h":
            node = prim("horizontal_blue", node)
        elif op == "l":
            if step[1] > 0:
                node = prim("left", lit(int(step[1])), node)
        elif op == "r":
            if step[1] > 0:
                node = prim("right", lit(int(step[1])), node)
        elif op == "call":
            node = Node(CALL, step[1], list(step[2:]) + [node])
        else:
            raise DataError(f"unknown chain step {step!r}")
    return node


def tower_body(steps):
    """Subroutine body for a net-effect block pattern, tail bound to $k."""
    return chain(steps, var("k"))


@dataclass(frozen=True)
class SubdomainDef:
    """Template hierarchy and parameter space for one subdomain."""

    name: str
    domain: str  # "drawings" | "towers"
    base_symbols: dict
    subroutines: tuple  # all tiers
    mode: str  # "sample" | "enumerate"
    sample_params: object = None  # rng -> params dict (sample mode)
    enumerate_params: object = None  # () -> [params dict] (enumerate mode)
    build_program: object = None  # params -> Node over the level-3 library

    def library(self, level: int) -> ConceptLibrary:
        if not 0 <= level <= 3:
            raise DataError(f"level must be 0..3, got {level}")
        subs = tuple(s for s in self.subroutines if s.tier <= level)
        return ConceptLibrary(self.name, level, dict(self.base_symbols), subs)


def make_sub(name, params, body, tier):
    return Subroutine(name=name, params=tuple(params), body=body, tier=tier)
