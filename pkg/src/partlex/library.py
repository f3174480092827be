"""Concept libraries: named subroutines, macro expansion and rewriting.

A library for a subdomain at level k contains the domain's base primitives
plus every subroutine of tier <= k. Tier-t bodies are written over symbols
of tier < t, so expanding or un-expanding a program proceeds tier by tier.

Rewriting is the inverse of expansion: scan the tree for subtrees that
structurally equal a subroutine body under some assignment of literals or
whole subtrees to the body's parameters, and replace them with calls. Per
tier, subroutines are tried in descending body-token-length order (ties
broken by name) and each is applied everywhere, leftmost-outermost, before
moving on; tiers are processed bottom-up and iterated to a fixpoint.
Outermost-first matching is what groups sequential patterns the same way
the generative templates compose them (a chain of identical blocks is
segmented from its start, not its end). Every substitution strictly
shortens the token sequence (all bodies carry at least two named tokens).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DataError, OracleError
from .sexpr import CALL, LIT, PRIM, VAR, Node, print_sexpr, program_length


@dataclass(frozen=True)
class Subroutine:
    name: str
    params: tuple  # parameter names, in call-argument order
    body: Node  # over lower-tier symbols, with VAR leaves
    tier: int  # 1..3

    def __post_init__(self):
        used = _collect_vars(self.body)
        declared = set(self.params)
        if used != declared:
            raise DataError(
                f"subroutine {self.name}: body uses {sorted(used)} "
                f"but declares {sorted(declared)}"
            )

    @property
    def body_tokens(self):
        return program_length(self.body)


def _collect_vars(node):
    out = set()
    stack = [node]
    while stack:
        n = stack.pop()
        if n.kind == VAR:
            out.add(n.name)
        stack.extend(n.children)
    return out


@dataclass(frozen=True)
class ConceptLibrary:
    """Cumulative symbol set for one (subdomain, level)."""

    subdomain: str
    level: int
    base_symbols: dict  # name -> arity
    subroutines: tuple  # all Subroutines with tier <= level

    def __post_init__(self):
        names = set(self.base_symbols)
        for sub in self.subroutines:
            if sub.name in names:
                raise DataError(f"duplicate symbol {sub.name!r} in library")
            names.add(sub.name)

    def symbol_inventory(self, allow_vars=False):
        """name -> (arity, kind) map for the parser."""
        inv = {name: (arity, PRIM) for name, arity in self.base_symbols.items()}
        for sub in self.subroutines:
            inv[sub.name] = (len(sub.params), CALL)
        return inv

    @property
    def size(self):
        """|L|: count of all usable symbols (base + inherited + new)."""
        return len(self.base_symbols) + len(self.subroutines)

    def subs_by_name(self):
        return {s.name: s for s in self.subroutines}

    def tiers(self):
        out = {}
        for s in self.subroutines:
            out.setdefault(s.tier, []).append(s)
        return out


def substitute(node: Node, bindings: dict) -> Node:
    if node.kind == VAR:
        try:
            return bindings[node.name]
        except KeyError:
            raise DataError(f"unbound parameter ${node.name}")
    if not node.children:
        return node
    return Node(node.kind, node.name, [substitute(c, bindings) for c in node.children], node.value)


def expand_program(program: Node, library: ConceptLibrary, to_level: int = 0) -> Node:
    """Macro-expand every call of tier > to_level down to lower symbols."""
    subs = library.subs_by_name()

    def walk(node):
        children = [walk(c) for c in node.children]
        node = Node(node.kind, node.name, children, node.value)
        if node.kind == CALL:
            sub = subs.get(node.name)
            if sub is None:
                raise DataError(f"unknown subroutine {node.name!r}")
            if sub.tier > to_level:
                bindings = dict(zip(sub.params, node.children))
                return walk(substitute(sub.body, bindings))
        return node

    return walk(program)


def match(subtree: Node, body: Node, bindings: dict) -> bool:
    """Structural match of ``subtree`` against a parameterized ``body``.

    Parameters bind literals or whole subtrees; repeated parameters must
    bind equal values. ``bindings`` is mutated on success paths, so pass a
    scratch dict and discard it on failure.
    """
    if body.kind == VAR:
        bound = bindings.get(body.name)
        if bound is None:
            bindings[body.name] = subtree
            return True
        return bound == subtree
    if body.kind == LIT:
        return (
            subtree.kind == LIT
            and type(subtree.value) is type(body.value)
            and subtree.value == body.value
        )
    if subtree.kind != body.kind or subtree.name != body.name:
        return False
    if len(subtree.children) != len(body.children):
        return False
    return all(match(sc, bc, bindings) for sc, bc in zip(subtree.children, body.children))


def _apply_sub_everywhere(node: Node, sub: Subroutine):
    """Replace every match of ``sub`` in one leftmost-outermost pass.

    The node itself is tried before its children; on a match the scan
    continues inside the call's arguments (which hold any remaining
    program, e.g. the continuation of a block chain).
    """
    changed = False
    if node.kind in (PRIM, CALL):
        bindings = {}
        if match(node, sub.body, bindings):
            node = Node(CALL, sub.name, [bindings[p] for p in sub.params])
            changed = True
    child_changed = False
    new_children = []
    for c in node.children:
        nc, ch = _apply_sub_everywhere(c, sub)
        child_changed = child_changed or ch
        new_children.append(nc)
    if child_changed:
        node = Node(node.kind, node.name, new_children, node.value)
    return node, changed or child_changed


def rewrite(program: Node, library: ConceptLibrary, verify: bool = False, evaluator=None) -> Node:
    """Compress a base-library program into ``library``.

    Returns a semantically equivalent program over the library's symbols
    such that no single further substitution of any library subroutine
    shortens the token sequence. With ``verify`` and an ``evaluator``
    (program -> comparable value), semantic equality against the input is
    checked and OracleError raised on mismatch.
    """
    tiers = library.tiers()
    result = program
    for tier in sorted(tiers):
        subs = sorted(tiers[tier], key=lambda s: (-s.body_tokens, s.name))
        while True:
            changed = False
            for sub in subs:
                result, ch = _apply_sub_everywhere(result, sub)
                changed = changed or ch
            if not changed:
                break
    if verify:
        if evaluator is None:
            raise DataError("verify=True requires an evaluator")
        before = evaluator(expand_program(program, library, 0))
        after = evaluator(expand_program(result, library, 0))
        if before != after:
            raise OracleError(
                f"rewrite changed semantics of {print_sexpr(program)[:80]}..."
            )
    return result


@dataclass(frozen=True)
class CostReport:
    subdomain: str
    level: int
    library_size: int
    mean_program_length: float
    combined_cost: float
    n_programs: int


def combined_cost(library: ConceptLibrary, programs) -> CostReport:
    """C = |L| + mean token length of the programs rewritten into L."""
    programs = list(programs)
    if not programs:
        raise DataError("combined_cost needs a nonempty corpus")
    total = sum(program_length(rewrite(p, library)) for p in programs)
    mean_len = total / len(programs)
    return CostReport(
        subdomain=library.subdomain,
        level=library.level,
        library_size=library.size,
        mean_program_length=mean_len,
        combined_cost=library.size + mean_len,
        n_programs=len(programs),
    )
