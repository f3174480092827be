"""Template hierarchies and generative models for the tower subdomains.

Tower subroutines take a single continuation parameter ``$k``; repetition
counts are baked into symbol names (``row4``, ``archspan_2_3``, ...) so
every body is a finite block chain. Each subdomain enumerates its full
categorical parameter space; stimuli are drawn from the enumeration.
"""

from __future__ import annotations

import itertools

from ..errors import DataError
from ..sexpr import Node, lit, prim, var
from ..towers import TOWER_BASE_SYMBOLS
from .defs import SubdomainDef, chain, make_sub, tower_body


def _row_steps(k):
    """k two-wide blue blocks side by side; cursor returns to the start."""
    steps = []
    for i in range(k):
        steps.append(("h",))
        if i < k - 1:
            steps.append(("r", 2))
    steps.append(("l", 2 * (k - 1)))
    return steps


def _calls(*names):
    return [("call", n) for n in names]


def _tsub(name, steps, tier):
    return make_sub(name, ["k"], tower_body(steps), tier)


# ------------------------------------------------------------------ bridges

def _bridge_subroutines():
    subs = []
    for t in (1, 2, 3):
        steps = [("v",)] * t + [("r", 1)] + [("v",)] * t + [("l", 1), ("h",)]
        subs.append(_tsub(f"arch{t}", steps, 1))
    for k in range(2, 7):
        subs.append(_tsub(f"row{k}", _row_steps(k), 1))
    subs.append(_tsub("pillar2", [("v",), ("v",)], 1))
    subs.append(_tsub("pillar3", [("v",), ("v",), ("v",)], 1))

    for t in (1, 2):
        for n in range(2, 7):
            steps = []
            for i in range(n):
                steps.append(("call", f"arch{t}"))
                steps.append(("r", 2) if i < n - 1 else ("l", 2 * (n - 1)))
            subs.append(_tsub(f"archspan_{t}_{n}", steps, 2))
    subs.append(_tsub("viaduct1", [("h",), ("h",)], 2))
    for n in range(2, 7):
        subs.append(_tsub(f"viaduct{n}", _calls(f"row{n}", f"row{n}"), 2))
    for n in range(2, 7):
        for kind, profile in _susp_profiles(n):
            steps = []
            for i, p in enumerate(profile):
                if p == 1:
                    steps.append(("v",))
                else:
                    steps.append(("call", f"pillar{p}"))
                steps.append(("r", 2) if i < n - 1 else ("l", 2 * (n - 1)))
            subs.append(_tsub(f"susp_{kind}_{n}", steps, 2))

    for t in (1, 2):
        for n in range(1, 7):
            for susp in _susp_kinds(n):
                for vr in (1, 2):
                    steps = []
                    if n == 1:
                        steps.append(("call", f"arch{t}"))
                        steps.append(("h",) if vr == 1 else ("call", "viaduct1"))
                        if susp == "u1":
                            steps.append(("v",))
                        else:
                            steps.append(("call", "pillar2"))
                    else:
                        steps.append(("call", f"archspan_{t}_{n}"))
                        steps.append(("call", f"row{n}" if vr == 1 else f"viaduct{n}"))
                        steps.append(("call", f"susp_{susp}_{n}"))
                    subs.append(_tsub(f"bridge_{t}_{n}_{susp}_{vr}", steps, 3))
    return tuple(subs)


def _susp_kinds(n):
    return ("u1", "u2") if n < 3 else ("u1", "u2", "peak", "valley")


def _susp_profiles(n):
    """Pillar-height profiles (in blocks, 1..3) for each suspension kind."""
    out = [("u1", [1] * n), ("u2", [2] * n)]
    if n >= 3:
        peak = [min(min(i, n - 1 - i) + 1, 3) for i in range(n)]
        top = max(peak)
        out.append(("peak", peak))
        out.append(("valley", [top + 1 - p for p in peak]))
    return out


def _bridge_params():
    out = []
    for t in (1, 2):
        for n in range(1, 7):
            for susp in _susp_kinds(n):
                for vr in (1, 2):
                    for ext_l in (0, 1):
                        for ext_r in (0, 1):
                            out.append(
                                {
                                    "arch": t,
                                    "span": n,
                                    "susp": susp,
                                    "deck_rows": vr,
                                    "ext_left": ext_l,
                                    "ext_right": ext_r,
                                }
                            )
    return out


def _bridge_build(params):
    t, n = params["arch"], params["span"]
    width = 2 * n + 2 * (params["ext_left"] + params["ext_right"])
    steps = [("l", width // 2)]
    if params["ext_left"]:
        steps += [("call", "arch3"), ("r", 2)]
    steps.append(("call", f"bridge_{t}_{n}_{params['susp']}_{params['deck_rows']}"))
    steps.append(("r", 2 * n))
    if params["ext_right"]:
        steps.append(("call", "arch3"))
    return chain(steps, prim("done"))


# ------------------------------------------------------------------- cities

_CITY_TILES = {"br": "tile_br", "rb": "tile_rb"}


def _city_subroutines():
    subs = []
    subs.append(_tsub("tile_br", [("h",), ("h",), ("r", 2), ("v",), ("l", 2)], 1))
    subs.append(_tsub("tile_rb", [("v",), ("r", 1), ("h",), ("h",), ("l", 1)], 1))
    subs.append(_tsub("spire", [("r", 1), ("v",), ("l", 1)], 1))

    for t in ("br", "rb"):
        other = "rb" if t == "br" else "br"
        for m in (2, 3, 4):
            subs.append(_tsub(f"wall_{t}_{m}", _calls(*[_CITY_TILES[t]] * m), 2))
            alt = [_CITY_TILES[t if i % 2 == 0 else other] for i in range(m)]
            subs.append(_tsub(f"wallalt_{t}_{m}", _calls(*alt), 2))

    for t in ("br", "rb"):
        for alt in (0, 1):
            for m in (2, 3, 4):
                for roof in ("cap", "spire"):
                    wall = f"{'wallalt' if alt else 'wall'}_{t}_{m}"
                    steps = [("call", wall)]
                    steps.append(("h",) if roof == "cap" else ("call", "spire"))
                    subs.append(_tsub(f"sky_{t}_{alt}_{m}_{roof}", steps, 3))
    return tuple(subs)


def _sky_names():
    return [
        f"sky_{t}_{alt}_{m}_{roof}"
        for t in ("br", "rb")
        for alt in (0, 1)
        for m in (2, 3, 4)
        for roof in ("cap", "spire")
    ]


def _city_params():
    names = _sky_names()
    return [
        {"left": a, "right": b, "gap": d}
        for a in names
        for b in names
        for d in (2, 3, 4)
    ]


def _city_build(params):
    # Each skyscraper is 3 columns wide.
    width = 3 + params["gap"] + 3
    steps = [
        ("l", width // 2),
        ("call", params["left"]),
        ("r", 3 + params["gap"]),
        ("call", params["right"]),
    ]
    return chain(steps, prim("done"))


# ------------------------------------------------------------------- houses

_FLOOR_ELEMS = {"w": "window", "b": "bricks", "d": "door"}


def _floor_steps(codes):
    steps = []
    for i, c in enumerate(codes):
        steps.append(("call", _FLOOR_ELEMS[c]))
        steps.append(("r", 4) if i < 2 else ("l", 8))
    return steps


def _house_subroutines():
    subs = []
    subs.append(_tsub("bricks", [("h",), ("h",), ("r", 2), ("h",), ("h",), ("l", 2)], 1))
    window = [("v",), ("r", 1)] * 3 + [("v",), ("l", 3)]
    subs.append(_tsub("window", window, 1))
    door = [("h",), ("h",), ("r", 2), ("v",), ("r", 1), ("v",), ("l", 3)]
    subs.append(_tsub("door", door, 1))
    for k in range(2, 6):
        subs.append(_tsub(f"row{k}", _row_steps(k), 1))

    for perm in itertools.permutations("wbd"):
        subs.append(_tsub("floor_g_" + "".join(perm), _floor_steps(perm), 2))
    for codes in itertools.product("wb", repeat=3):
        subs.append(_tsub("floor_u_" + "".join(codes), _floor_steps(codes), 2))
    pyramid = []
    for k in (5, 4, 3, 2):
        pyramid += [("r", 1), ("call", f"row{k}")]
    pyramid += [("r", 1), ("h",), ("l", 5)]
    subs.append(_tsub("pyramid", pyramid, 2))

    for ground in itertools.permutations("wbd"):
        g = "".join(ground)
        for uppers in _upper_floor_combos():
            name = "house_" + g + ("_" + "_".join(uppers) if uppers else "")
            steps = [("call", "floor_g_" + g)]
            steps += [("call", "floor_u_" + u) for u in uppers]
            steps.append(("call", "pyramid"))
            subs.append(_tsub(name, steps, 3))
    return tuple(subs)


def _upper_floor_combos():
    singles = ["".join(c) for c in itertools.product("wb", repeat=3)]
    out = [()]
    out += [(u,) for u in singles]
    out += [(u1, u2) for u1 in singles for u2 in singles]
    return out


def _house_params():
    out = []
    for ground in itertools.permutations("wbd"):
        for uppers in _upper_floor_combos():
            out.append({"ground": "".join(ground), "uppers": list(uppers)})
    return out


def _house_build(params):
    uppers = tuple(params["uppers"])
    name = "house_" + params["ground"] + ("_" + "_".join(uppers) if uppers else "")
    # Houses are 12 columns wide; start at column 4 to center on the grid.
    return chain([("l", 6), ("call", name)], prim("done"))


# ------------------------------------------------------------------ castles

_CASTLE_TILES = {"b": "tile_b", "r": "tile_r"}


def _castle_subroutines():
    subs = []
    subs.append(_tsub("tile_b", [("h",), ("h",)], 1))
    subs.append(_tsub("tile_r", [("v",), ("r", 1), ("v",), ("l", 1)], 1))
    for k in (2, 3, 4):
        subs.append(_tsub(f"row{k}", _row_steps(k), 1))

    for t in ("b", "r", "alt"):
        for w in (2, 3, 4):
            for hh in (2, 3, 4):
                steps = []
                for c in range(w):
                    for row in range(hh):
                        if t == "alt":
                            tile = _CASTLE_TILES["b" if (c + row) % 2 == 0 else "r"]
                        else:
                            tile = _CASTLE_TILES[t]
                        steps.append(("call", tile))
                    steps.append(("r", 2) if c < w - 1 else ("l", 2 * (w - 1)))
                subs.append(_tsub(f"wall_{t}_{w}_{hh}", steps, 2))
    for w in (2, 3, 4):
        steps = []
        for k in range(w - 1, 0, -1):
            steps.append(("r", 1))
            steps.append(("h",) if k == 1 else ("call", f"row{k}"))
        steps.append(("l", w - 1))
        subs.append(_tsub(f"pyramid{w}", steps, 2))
        dome = [("call", f"row{w}"), ("r", w - 1), ("v",), ("l", w - 1)]
        subs.append(_tsub(f"dome{w}", dome, 2))
    for t in ("b", "r"):
        for sh in (2, 3):
            subs.append(_tsub(f"stack_{t}_{sh}", _calls(*[_CASTLE_TILES[t]] * sh), 2))

    for t in ("b", "r", "alt"):
        for w in (2, 3, 4):
            for hh in (2, 3, 4):
                for roof in ("pyr", "dome"):
                    roof_sym = f"pyramid{w}" if roof == "pyr" else f"dome{w}"
                    steps = _calls(f"wall_{t}_{w}_{hh}", roof_sym)
                    subs.append(_tsub(f"walltower_{t}_{w}_{hh}_{roof}", steps, 3))
    for t in ("b", "r"):
        for sh in (1, 2, 3):
            for roof in ("pyr", "dome"):
                if sh == 1:
                    steps = [("call", _CASTLE_TILES[t])]
                else:
                    steps = [("call", f"stack_{t}_{sh}")]
                steps.append(("h",))
                if roof == "dome":
                    steps.append(("v",))
                subs.append(_tsub(f"stacktower_{t}_{sh}_{roof}", steps, 3))
    return tuple(subs)


def _castle_params():
    out = []
    for wall_t in ("b", "r", "alt"):
        for w in (2, 3, 4):
            for hh in (2, 3, 4):
                for stack_t in ("b", "r"):
                    for roof in ("pyr", "dome"):
                        for gap in (1, 2):
                            for sh_l in range(1, hh):
                                for sh_r in range(1, hh):
                                    out.append(
                                        {
                                            "wall": wall_t,
                                            "width": w,
                                            "height": hh,
                                            "stack": stack_t,
                                            "roof": roof,
                                            "gap": gap,
                                            "stack_left": sh_l,
                                            "stack_right": sh_r,
                                        }
                                    )
    return out


def _castle_build(params):
    w, g = params["width"], params["gap"]
    t, roof = params["stack"], params["roof"]
    width = 2 + g + 2 * w + g + 2
    steps = [
        ("l", width // 2),
        ("call", f"stacktower_{t}_{params['stack_left']}_{roof}"),
        ("r", 2 + g),
        ("call", f"walltower_{params['wall']}_{w}_{params['height']}_{roof}"),
        ("r", 2 * w + g),
        ("call", f"stacktower_{t}_{params['stack_right']}_{roof}"),
    ]
    return chain(steps, prim("done"))


# ---------------------------------------------------------------- registry

def _make_def(name, subroutines, enumerate_params, builder):
    return SubdomainDef(
        name=name,
        domain="towers",
        base_symbols=dict(TOWER_BASE_SYMBOLS),
        subroutines=subroutines,
        mode="enumerate",
        enumerate_params=enumerate_params,
        build_program=builder,
    )


def tower_subdomains():
    return {
        "bridges": _make_def("bridges", _bridge_subroutines(), _bridge_params, _bridge_build),
        "cities": _make_def("cities", _city_subroutines(), _city_params, _city_build),
        "houses": _make_def("houses", _house_subroutines(), _house_params, _house_build),
        "castles": _make_def("castles", _castle_subroutines(), _castle_params, _castle_build),
    }
