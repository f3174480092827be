"""Template hierarchies and generative models for the drawing subdomains.

Each subdomain declares three tiers of subroutines over the shared base
primitives and a sampler over its parameter ranges. Stimuli are built as a
single top-tier call; the lower-level ground-truth programs are obtained by
macro-expanding that call tier by tier, so all levels are semantically
equal by construction.
"""

from __future__ import annotations

import math

from ..drawing import DRAWING_BASE_SYMBOLS
from ..errors import DataError
from ..sexpr import CALL, Node, lit, prim, var
from .defs import SubdomainDef, connect, fnum, gm, make_sub, rep, tf

TWO_PI = 2.0 * math.pi
HALF_PI = math.pi / 2.0


def _call(name, subs_by_name, values):
    sub = subs_by_name[name]
    args = []
    for p in sub.params:
        v = values[p]
        args.append(v if isinstance(v, Node) else lit(v))
    return Node(CALL, name, args)


def _poly_vals(prefix, n, radius):
    """Literal values for a regular n-gon of given circumradius, centered."""
    side = 2.0 * radius * math.sin(math.pi / n)
    return {
        prefix + "s": side,
        prefix + "ex": -side / 2.0,
        prefix + "ey": -radius * math.cos(math.pi / n),
        prefix + "th": TWO_PI / n,
        prefix + "cr": 0.15 * radius,
    }


def _poly_body(prefix, n):
    return Node(
        CALL,
        "polygon",
        [
            lit(n),
            var(prefix + "s"),
            var(prefix + "ex"),
            var(prefix + "ey"),
            var(prefix + "th"),
            var(prefix + "cr"),
        ],
    )


def _poly_params(prefix):
    return [prefix + "s", prefix + "ex", prefix + "ey", prefix + "th", prefix + "cr"]


# ------------------------------------------------------------- nuts & bolts

def _nuts_subroutines():
    subs = []
    # Tier 1: n-gon of rotated lines with a center mark; dot with a tick.
    # Both expand over the same base-symbol set (line + circle each).
    polygon_body = connect(
        rep(
            tf(prim("line"), var("s"), 0.0, var("ex"), var("ey")),
            var("n"),
            gm(1.0, var("th"), 0.0, 0.0),
        ),
        tf(prim("circle"), var("cr"), 0.0, 0.0, 0.0),
    )
    subs.append(make_sub("polygon", ["n", "s", "ex", "ey", "th", "cr"], polygon_body, 1))
    spot_body = connect(
        tf(prim("circle"), var("r"), 0.0, var("x"), var("y")),
        tf(prim("line"), var("tl"), var("ta"), var("x"), var("y")),
    )
    subs.append(make_sub("spot", ["r", "x", "y", "tl", "ta"], spot_body, 1))
    # Tier 2: a ring of any shape about the origin; radial spoke lines.
    ring_body = rep(
        prim("apply_transform", var("shape"), gm(1.0, 0.0, var("d"), 0.0)),
        var("m"),
        gm(1.0, var("phi"), 0.0, 0.0),
    )
    subs.append(make_sub("ring", ["shape", "m", "d", "phi"], ring_body, 2))
    spokes_body = rep(
        tf(prim("line"), var("sl"), 0.0, var("sx"), 0.0),
        var("m"),
        gm(1.0, var("phi"), 0.0, 0.0),
    )
    subs.append(make_sub("spokes", ["sl", "sx", "m", "phi"], spokes_body, 2))
    # Tier 3: whole-object templates, one per categorical combination.
    for outer_name, outer_n in (("hex", 6), ("oct", 8)):
        for inner in ("round", "square", "hexhole"):
            for ring_shape in ("round", "hexelem"):
                for n_rings in (1, 2):
                    for spoked in (0, 1):
                        for mark in (0, 1):
                            name = (
                                f"nut_{outer_name}_{inner}_{ring_shape}"
                                f"_{n_rings}_{spoked}_{mark}"
                            )
                            params, body = _nut_combo(
                                outer_n, inner, ring_shape, n_rings, spoked, mark
                            )
                            subs.append(make_sub(name, params, body, 3))
    return tuple(subs)


def _ring_elem(kind, j, params):
    if kind == "round":
        params.extend([f"rr{j}", f"rtl{j}", f"rta{j}"])
        return Node(
            CALL,
            "spot",
            [var(f"rr{j}"), lit(0.0), lit(0.0), var(f"rtl{j}"), var(f"rta{j}")],
        )
    params.extend(_poly_params(f"e{j}"))
    return _poly_body(f"e{j}", 6)


def _nut_combo(outer_n, inner, ring_shape, n_rings, spoked, mark):
    params = list(_poly_params("o"))
    parts = [_poly_body("o", outer_n)]
    if inner == "round":
        params.extend(["ir", "itl", "ita"])
        parts.append(
            Node(CALL, "spot", [var("ir"), lit(0.0), lit(0.0), var("itl"), var("ita")])
        )
    elif inner == "square":
        params.extend(_poly_params("i"))
        parts.append(_poly_body("i", 4))
    else:
        params.extend(_poly_params("i"))
        parts.append(_poly_body("i", 6))
    if spoked:
        parts.append(
            Node(CALL, "spokes", [var("ssl"), var("ssx"), var("sm"), var("sphi")])
        )
        params.extend(["ssl", "ssx", "sm", "sphi"])
    if mark:
        # A raw index-mark line on the rim.
        parts.append(tf(prim("line"), var("kl"), var("ka"), var("kx"), lit(0.0)))
        params.extend(["kl", "ka", "kx"])
    # With two rings the elements alternate kinds, ring 1 taking ring_shape.
    kinds = [ring_shape, "hexelem" if ring_shape == "round" else "round"]
    for j in range(1, n_rings + 1):
        shape = _ring_elem(kinds[j - 1], j, params)
        parts.append(Node(CALL, "ring", [shape, var(f"m{j}"), var(f"d{j}"), var(f"phi{j}")]))
        params.extend([f"m{j}", f"d{j}", f"phi{j}"])
    return params, connect(*parts)


def _nuts_sample(rng):
    return {
        "outer": str(rng.choice(["hex", "oct"])),
        "radius": float(rng.choice([2.0, 2.5, 3.0])),
        "inner": str(rng.choice(["round", "square", "hexhole"])),
        "inner_size": float(rng.choice([0.35, 0.5, 0.65])),
        "ring_shape": str(rng.choice(["round", "hexelem"])),
        "n_rings": int(rng.choice([1, 2])),
        "ring_m": int(rng.choice([5, 6, 7, 8])),
        "ring_frac": float(rng.choice([0.5, 0.62])),
        "elem_size": float(rng.choice([0.2, 0.3])),
        "ring2_m": int(rng.choice([9, 10, 12])),
        "tick_a": float(rng.choice([0.7853981633974483, 2.356194490192345])),
        "spoked": int(rng.choice([0, 1])),
        "spoke_m": int(rng.choice([6, 8, 10])),
        "spoke_len": float(rng.choice([0.7, 1.2])),
        "mark": int(rng.choice([0, 1])),
    }


def _nuts_build(params, subs_by_name):
    outer_n = 6 if params["outer"] == "hex" else 8
    radius = params["radius"]
    tick_a = params["tick_a"]
    values = _poly_vals("o", outer_n, radius)
    if params["inner"] == "round":
        values["ir"] = params["inner_size"]
        values["itl"] = params["inner_size"] * 1.4
        values["ita"] = tick_a
    elif params["inner"] == "square":
        values.update(_poly_vals("i", 4, params["inner_size"]))
    else:
        values.update(_poly_vals("i", 6, params["inner_size"]))
    if params["spoked"]:
        sm = params["spoke_m"]
        values.update(
            {
                "ssl": params["spoke_len"],
                "ssx": params["inner_size"] + 0.15,
                "sm": sm,
                "sphi": TWO_PI / sm,
            }
        )
    if params["mark"]:
        values.update(
            {"kl": 0.4, "ka": tick_a, "kx": radius + 0.3}
        )
    ring_ms = [params["ring_m"], params["ring2_m"]]
    kinds = [
        params["ring_shape"],
        "hexelem" if params["ring_shape"] == "round" else "round",
    ]
    for j in range(1, params["n_rings"] + 1):
        frac = params["ring_frac"] + (j - 1) * 0.25
        size = params["elem_size"] * (1.0 if j == 1 else 0.6)
        if kinds[j - 1] == "round":
            values[f"rr{j}"] = size
            values[f"rtl{j}"] = size * 1.4
            values[f"rta{j}"] = tick_a
        else:
            values.update(_poly_vals(f"e{j}", 6, size))
        m = ring_ms[j - 1]
        values[f"m{j}"] = m
        values[f"d{j}"] = frac * radius
        values[f"phi{j}"] = TWO_PI / m
    name = (
        f"nut_{params['outer']}_{params['inner']}_{params['ring_shape']}"
        f"_{params['n_rings']}_{params['spoked']}_{params['mark']}"
    )
    return _call(name, subs_by_name, values)


# ----------------------------------------------------------------- vehicles

def _vehicles_subroutines():
    subs = []
    wheel_body = prim(
        "apply_transform",
        prim("connect", prim("circle"), tf(prim("circle"), var("hub"), 0.0, 0.0, 0.0)),
        gm(var("r"), 0.0, var("x"), var("y")),
    )
    subs.append(make_sub("wheel", ["r", "hub", "x", "y"], wheel_body, 1))
    window_body = tf(prim("square"), var("s"), 0.0, var("x"), var("y"))
    subs.append(make_sub("window", ["s", "x", "y"], window_body, 1))
    antenna_body = connect(
        tf(prim("line"), var("ln"), HALF_PI, var("x"), var("y")),
        tf(prim("circle"), var("cr"), 0.0, var("x"), var("cy")),
    )
    subs.append(make_sub("antenna", ["ln", "x", "y", "cr", "cy"], antenna_body, 1))

    wheel_row_body = rep(
        Node(CALL, "wheel", [var("r"), var("hub"), var("x0"), var("y")]),
        var("n"),
        gm(1.0, 0.0, var("dx"), 0.0),
    )
    subs.append(make_sub("wheel_row", ["r", "hub", "x0", "y", "n", "dx"], wheel_row_body, 2))
    window_row_body = rep(
        Node(CALL, "window", [var("s"), var("x0"), var("y")]),
        var("n"),
        gm(1.0, 0.0, var("dx"), 0.0),
    )
    subs.append(make_sub("window_row", ["s", "x0", "y", "n", "dx"], window_row_body, 2))

    def rect_at(wv, hv, xv, yv):
        return tf(prim("scaled_rect", var(wv), var(hv)), 1.0, 0.0, xv, yv)

    car_body = connect(
        rect_at("w1", "h1", 0.0, var("y1")), rect_at("w2", "h2", var("x2"), var("y2"))
    )
    subs.append(make_sub("car_base", ["w1", "h1", "y1", "w2", "h2", "x2", "y2"], car_body, 2))
    truck_body = connect(
        rect_at("w1", "h1", 0.0, var("y1")),
        rect_at("w2", "h2", var("x2"), var("y2")),
        tf(prim("line"), var("lw"), 0.0, var("lx"), var("ly")),
    )
    subs.append(
        make_sub(
            "truck_base",
            ["w1", "h1", "y1", "w2", "h2", "x2", "y2", "lw", "lx", "ly"],
            truck_body,
            2,
        )
    )
    wagon_body = connect(
        rect_at("w1", "h1", 0.0, var("y1")), tf(prim("line"), var("lw"), 0.0, var("lx"), var("ly"))
    )
    subs.append(make_sub("wagon_base", ["w1", "h1", "y1", "lw", "lx", "ly"], wagon_body, 2))
    # The four-part assembly chain itself is a concept.
    rig_body = connect(var("a"), var("b"), var("c"), var("d"))
    subs.append(make_sub("rig", ["a", "b", "c", "d"], rig_body, 2))

    base_params = {
        "car": ["bw1", "bh1", "by1", "bw2", "bh2", "bx2", "by2"],
        "truck": ["bw1", "bh1", "by1", "bw2", "bh2", "bx2", "by2", "blw", "blx", "bly"],
        "wagon": ["bw1", "bh1", "by1", "blw", "blx", "bly"],
    }
    for base in ("car", "truck", "wagon"):
        for nw in (2, 3, 4):
            for top in ("win", "ant1", "ant2"):
                for extra in ("spare", "hatch"):
                    for rows in (1, 2):
                        name = f"vehicle_{base}_{nw}w_{top}_{extra}_{rows}r"
                        params = list(base_params[base])
                        base_call = Node(
                            CALL, f"{base}_base", [var(p) for p in base_params[base]]
                        )
                        row_call = Node(
                            CALL,
                            "wheel_row",
                            [var("wr"), var("whub"), var("wx0"), var("wy"), lit(nw), var("wdx")],
                        )
                        params += ["wr", "whub", "wx0", "wy", "wdx"]
                        if rows == 1:
                            wheels = row_call
                        else:
                            # Dual rims: a second, narrower row of wheels on
                            # the same axle line.
                            wheels = connect(
                                row_call,
                                Node(
                                    CALL,
                                    "wheel_row",
                                    [var("w2r"), var("whub"), var("wx0"), var("wy"), lit(nw), var("wdx")],
                                ),
                            )
                            params += ["w2r"]
                        if extra == "spare":
                            slot3 = Node(
                                CALL, "wheel", [var("spr"), var("sphub"), var("spx"), var("spy")]
                            )
                            params += ["spr", "sphub", "spx", "spy"]
                        else:
                            slot3 = Node(CALL, "window", [var("hs"), var("hx"), var("hy")])
                            params += ["hs", "hx", "hy"]
                        if top == "win":
                            # A window row plus a standalone windshield window.
                            top_node = connect(
                                Node(
                                    CALL,
                                    "window_row",
                                    [var("ts"), var("tx0"), var("ty"), var("tn"), var("tdx")],
                                ),
                                Node(CALL, "window", [var("ws2"), var("wx2"), var("wy2")]),
                            )
                            params += ["ts", "tx0", "ty", "tn", "tdx", "ws2", "wx2", "wy2"]
                        else:
                            ants = []
                            n_ant = 1 if top == "ant1" else 2
                            for a in range(n_ant):
                                ants.append(
                                    Node(
                                        CALL,
                                        "antenna",
                                        [
                                            var(f"a{a}ln"),
                                            var(f"a{a}x"),
                                            var(f"a{a}y"),
                                            var(f"a{a}cr"),
                                            var(f"a{a}cy"),
                                        ],
                                    )
                                )
                                params += [f"a{a}ln", f"a{a}x", f"a{a}y", f"a{a}cr", f"a{a}cy"]
                            top_node = ants[0] if n_ant == 1 else connect(*ants)
                        body = Node(CALL, "rig", [base_call, wheels, slot3, top_node])
                        subs.append(make_sub(name, params, body, 3))
    return tuple(subs)


def _vehicles_sample(rng):
    return {
        "base": str(rng.choice(["car", "truck", "wagon"])),
        "n_wheels": int(rng.choice([2, 3, 4])),
        "top": str(rng.choice(["win", "ant1", "ant2"])),
        "extra": str(rng.choice(["spare", "hatch"])),
        "rows": int(rng.choice([1, 2])),
        "body_w": float(rng.choice([4.0, 5.0, 6.0])),
        "body_h": float(rng.choice([1.2, 1.6])),
        "wheel_r": float(rng.choice([0.5, 0.65])),
        "win_s": float(rng.choice([0.6, 0.8])),
        "win_n": int(rng.choice([2, 3])),
        "ant_ln": float(rng.choice([0.8, 1.2])),
    }


def _vehicles_build(params, subs_by_name):
    w1, h1 = params["body_w"], params["body_h"]
    wr = params["wheel_r"]
    y1 = h1 / 2.0 + wr * 0.8
    values = {"bw1": w1, "bh1": h1, "by1": y1}
    base = params["base"]
    roof_y = y1 + h1 / 2.0
    if base == "car":
        values.update(
            {"bw2": w1 * 0.5, "bh2": 1.0, "bx2": -w1 * 0.1, "by2": roof_y + 0.5}
        )
        top_y = roof_y + 0.5
    elif base == "truck":
        values.update(
            {
                "bw2": w1 * 0.35,
                "bh2": h1 + 0.8,
                "bx2": -(w1 / 2.0 - w1 * 0.175),
                "by2": y1 + 0.4,
                "blw": w1,
                "blx": -w1 / 2.0,
                "bly": roof_y + 0.05,
            }
        )
        top_y = y1 + h1 / 2.0 + 0.8
    else:
        values.update(
            {"blw": w1 * 0.8, "blx": -w1 * 0.4, "bly": roof_y + 0.3}
        )
        top_y = roof_y + 0.3
    nw = params["n_wheels"]
    wdx = (w1 - 1.0) / (nw - 1) if nw > 1 else 0.0
    span = (nw - 1) * wdx
    values.update(
        {"wr": wr, "whub": 0.4, "wx0": -span / 2.0 - wdx, "wy": 0.0, "wdx": wdx}
    )
    if params["rows"] == 2:
        values["w2r"] = wr * 0.55
    if params["extra"] == "spare":
        values.update(
            {
                "spr": wr * 0.8,
                "sphub": 0.4,
                "spx": -(w1 / 2.0 + wr * 0.8 + 0.2),
                "spy": y1,
            }
        )
    else:
        values.update({"hs": 0.7, "hx": -w1 * 0.25, "hy": y1 + h1 / 2.0 + 0.15})
    top = params["top"]
    if top == "win":
        tn = params["win_n"]
        tdx = params["win_s"] + 0.3
        tspan = (tn - 1) * tdx
        values.update(
            {
                "ts": params["win_s"],
                "tx0": -tspan / 2.0 - tdx,
                "ty": top_y + 0.6,
                "tn": tn,
                "tdx": tdx,
                "ws2": params["win_s"] * 1.3,
                "wx2": tspan / 2.0 + params["win_s"] + 0.5,
                "wy2": top_y + 0.6,
            }
        )
    else:
        n_ant = 1 if top == "ant1" else 2
        for a in range(n_ant):
            ax = 0.0 if n_ant == 1 else (-0.8 if a == 0 else 0.8)
            ay = top_y
            ln = params["ant_ln"]
            values.update(
                {
                    f"a{a}ln": ln,
                    f"a{a}x": ax,
                    f"a{a}y": ay,
                    f"a{a}cr": 0.15,
                    f"a{a}cy": ay + ln,
                }
            )
    name = f"vehicle_{base}_{nw}w_{top}_{params['extra']}_{params['rows']}r"
    return _call(name, subs_by_name, values)


# ------------------------------------------------------------------ gadgets

def _gadgets_subroutines():
    subs = []
    dial_body = connect(
        tf(prim("circle"), var("r"), 0.0, var("x"), var("y")),
        tf(prim("line"), var("tl"), var("ta"), var("x"), var("y")),
    )
    subs.append(make_sub("dial", ["r", "x", "y", "tl", "ta"], dial_body, 1))
    button_body = tf(prim("square"), var("s"), 0.0, var("x"), var("y"))
    subs.append(make_sub("button", ["s", "x", "y"], button_body, 1))
    antenna_body = connect(
        tf(prim("line"), var("ln"), HALF_PI, var("x"), var("y")),
        tf(prim("circle"), var("cr"), 0.0, var("x"), var("cy")),
    )
    subs.append(make_sub("antenna", ["ln", "x", "y", "cr", "cy"], antenna_body, 1))

    dial_row_body = rep(
        Node(CALL, "dial", [var("r"), var("x0"), var("y"), var("tl"), var("ta")]),
        var("n"),
        gm(1.0, 0.0, var("dx"), 0.0),
    )
    subs.append(make_sub("dial_row", ["r", "x0", "y", "tl", "ta", "n", "dx"], dial_row_body, 2))
    button_row_body = rep(
        Node(CALL, "button", [var("s"), var("x0"), var("y")]),
        var("n"),
        gm(1.0, 0.0, var("dx"), 0.0),
    )
    subs.append(make_sub("button_row", ["s", "x0", "y", "n", "dx"], button_row_body, 2))

    console_body = connect(
        tf(prim("scaled_rect", var("w1"), var("h1")), 1.0, 0.0, 0.0, var("y1")),
        tf(prim("scaled_rect", var("w2"), var("h2")), 1.0, 0.0, var("x2"), var("y2")),
    )
    subs.append(make_sub("console_base", ["w1", "h1", "y1", "w2", "h2", "x2", "y2"], console_body, 2))
    box_body = tf(prim("scaled_rect", var("w"), var("h")), 1.0, 0.0, 0.0, var("y"))
    subs.append(make_sub("box_base", ["w", "h", "y"], box_body, 2))
    # A matched pair of antennas at mirrored offsets.
    ant_pair_body = connect(
        Node(CALL, "antenna", [var("ln"), var("x1"), var("y"), var("cr"), var("cy")]),
        Node(CALL, "antenna", [var("ln"), var("x2"), var("y"), var("cr"), var("cy")]),
    )
    subs.append(make_sub("ant_pair", ["ln", "x1", "x2", "y", "cr", "cy"], ant_pair_body, 2))
    # The four-part front-panel chain itself is a concept.
    panel_body = connect(var("a"), var("b"), var("c"), var("d"))
    subs.append(make_sub("panel", ["a", "b", "c", "d"], panel_body, 2))

    base_params = {
        "console": ["bw1", "bh1", "by1", "bw2", "bh2", "bx2", "by2"],
        "box": ["bw", "bh", "by"],
    }
    row_params = {
        "dial": ["cr", "cx0", "cy", "ctl", "cta", "cdx"],
        "button": ["cs", "cx0", "cy", "cdx"],
    }
    for base in ("console", "box"):
        for ctrl in ("dial", "button"):
            for nc in (2, 3, 4):
                for na in (0, 1, 2):
                    for disp in ("meter", "pad"):
                        name = f"gadget_{base}_{ctrl}{nc}_{na}a_{disp}"
                        params = list(base_params[base])
                        base_call = Node(
                            CALL, f"{base}_base", [var(p) for p in base_params[base]]
                        )
                        if ctrl == "dial":
                            row = Node(
                                CALL,
                                "dial_row",
                                [var("cr"), var("cx0"), var("cy"), var("ctl"), var("cta"), lit(nc), var("cdx")],
                            )
                        else:
                            row = Node(
                                CALL,
                                "button_row",
                                [var("cs"), var("cx0"), var("cy"), lit(nc), var("cdx")],
                            )
                        params += row_params[ctrl]
                        # The display slot holds either a meter dial or a
                        # large touch pad button.
                        if disp == "meter":
                            slot3 = Node(
                                CALL,
                                "dial",
                                [var("mdr"), var("mdx"), var("mdy"), var("mdtl"), var("mdta")],
                            )
                            params += ["mdr", "mdx", "mdy", "mdtl", "mdta"]
                        else:
                            slot3 = Node(CALL, "button", [var("tps"), var("tpx"), var("tpy")])
                            params += ["tps", "tpx", "tpy"]
                        power = Node(CALL, "button", [var("pbs"), var("pbx"), var("pby")])
                        params += ["pbs", "pbx", "pby"]
                        if na == 0:
                            tail = power
                        elif na == 1:
                            tail = connect(
                                power,
                                Node(
                                    CALL,
                                    "antenna",
                                    [var("aln"), var("ax"), var("ay"), var("acr"), var("acy")],
                                ),
                            )
                            params += ["aln", "ax", "ay", "acr", "acy"]
                        else:
                            tail = connect(
                                power,
                                Node(
                                    CALL,
                                    "ant_pair",
                                    [var("aln"), var("ax1"), var("ax2"), var("ay"), var("acr"), var("acy")],
                                ),
                            )
                            params += ["aln", "ax1", "ax2", "ay", "acr", "acy"]
                        body = Node(CALL, "panel", [base_call, row, slot3, tail])
                        subs.append(make_sub(name, params, body, 3))
    return tuple(subs)


def _gadgets_sample(rng):
    return {
        "base": str(rng.choice(["console", "box"])),
        "ctrl": str(rng.choice(["dial", "button"])),
        "n_ctrl": int(rng.choice([2, 3, 4])),
        "n_ant": int(rng.choice([0, 1, 2])),
        "disp": str(rng.choice(["meter", "pad"])),
        "base_w": float(rng.choice([3.0, 4.0, 5.0])),
        "base_h": float(rng.choice([1.5, 2.0])),
        "ctrl_s": float(rng.choice([0.3, 0.45])),
        "tick_a": float(rng.choice([0.7853981633974483, 2.356194490192345])),
        "ant_ln": float(rng.choice([0.8, 1.1])),
    }


def _gadgets_build(params, subs_by_name):
    w, h = params["base_w"], params["base_h"]
    base = params["base"]
    if base == "console":
        values = {
            "bw1": w,
            "bh1": h,
            "by1": 0.0,
            "bw2": w * 0.6,
            "bh2": h * 0.5,
            "bx2": 0.0,
            "by2": h / 2.0 + h * 0.25 + 0.2,
        }
        top_y = h / 2.0 + h * 0.5 + 0.2
    else:
        values = {"bw": w, "bh": h, "by": 0.0}
        top_y = h / 2.0
    nc = params["n_ctrl"]
    s = params["ctrl_s"]
    cdx = (w - 1.0) / max(nc - 1, 1) if nc > 1 else 0.0
    span = (nc - 1) * cdx
    if params["ctrl"] == "dial":
        values.update(
            {
                "cr": s,
                "cx0": -span / 2.0 - cdx,
                "cy": 0.0,
                "ctl": s * 0.8,
                "cta": params["tick_a"],
                "cdx": cdx,
            }
        )
    else:
        values.update({"cs": s, "cx0": -span / 2.0 - cdx, "cy": 0.0, "cdx": cdx})
    dial_y = -(h / 2.0) + 0.35
    if params["disp"] == "meter":
        values.update(
            {
                "mdr": s * 1.5,
                "mdx": -w * 0.3,
                "mdy": dial_y,
                "mdtl": s * 1.2,
                "mdta": params["tick_a"],
            }
        )
    else:
        values.update({"tps": s * 1.7, "tpx": -w * 0.3, "tpy": dial_y})
    values.update({"pbs": s * 0.8, "pbx": w * 0.3, "pby": dial_y})
    na = params["n_ant"]
    ln = params["ant_ln"]
    if na == 1:
        values.update(
            {"aln": ln, "ax": 0.0, "ay": top_y, "acr": 0.12, "acy": top_y + ln}
        )
    elif na == 2:
        values.update(
            {
                "aln": ln,
                "ax1": -w * 0.3,
                "ax2": w * 0.3,
                "ay": top_y,
                "acr": 0.12,
                "acy": top_y + ln,
            }
        )
    name = f"gadget_{base}_{params['ctrl']}{nc}_{na}a_{params['disp']}"
    return _call(name, subs_by_name, values)


# ---------------------------------------------------------------- furniture

def _furniture_subroutines():
    subs = []
    # Knob and foot expand over the same base symbols (circle + square) in
    # opposite roles: a round knob with a square bezel, a square foot with
    # a round caster mark.
    knob_body = connect(
        tf(prim("circle"), var("r"), 0.0, var("x"), var("y")),
        tf(prim("square"), var("b"), 0.0, var("x"), var("y")),
    )
    subs.append(make_sub("knob", ["r", "b", "x", "y"], knob_body, 1))
    foot_body = connect(
        tf(prim("square"), var("s"), 0.0, var("x"), var("y")),
        tf(prim("circle"), var("c"), 0.0, var("x"), var("y")),
    )
    subs.append(make_sub("foot", ["s", "c", "x", "y"], foot_body, 1))

    drawer1_body = connect(
        tf(prim("scaled_rect", var("w"), var("h")), 1.0, 0.0, 0.0, var("y")),
        Node(CALL, "knob", [var("kr"), var("kb"), lit(0.0), var("y")]),
    )
    subs.append(make_sub("drawer1", ["w", "h", "y", "kr", "kb"], drawer1_body, 2))
    drawer2_body = connect(
        tf(prim("scaled_rect", var("w"), var("h")), 1.0, 0.0, 0.0, var("y")),
        Node(CALL, "knob", [var("kr"), var("kb"), var("kx1"), var("y")]),
        Node(CALL, "knob", [var("kr"), var("kb"), var("kx2"), var("y")]),
    )
    subs.append(
        make_sub("drawer2", ["w", "h", "y", "kr", "kb", "kx1", "kx2"], drawer2_body, 2)
    )

    drawer_params = {
        1: ["dw", "dh", "dy0", "dkr", "dkb"],
        2: ["dw", "dh", "dy0", "dkr", "dkb", "dkx1", "dkx2"],
    }
    for kind in ("dresser", "sideboard"):
        for nd in (2, 3, 4):
            for dt in (1, 2):
                for feet in (0, 1):
                    for med in (0, 1):
                        for rail in (0, 1):
                            name = f"furn_{kind}_{nd}d_{dt}k_{feet}f_{med}m_{rail}r"
                            params = ["fw", "fh", "fx", "fy"]
                            frame = tf(
                                prim("scaled_rect", var("fw"), var("fh")), 1.0, 0.0, var("fx"), var("fy")
                            )
                            drawer = Node(
                                CALL, f"drawer{dt}", [var(p) for p in drawer_params[dt]]
                            )
                            params += drawer_params[dt]
                            if kind == "dresser":
                                stack = rep(drawer, lit(nd), gm(1.0, 0.0, 0.0, var("step")))
                            else:
                                stack = rep(drawer, lit(nd), gm(1.0, 0.0, var("step"), 0.0))
                            params.append("step")
                            # A standalone handle knob sits on the frame.
                            handle = Node(
                                CALL, "knob", [var("hkr"), var("hkb"), var("hkx"), var("hky")]
                            )
                            params += ["hkr", "hkb", "hkx", "hky"]
                            parts = [frame, stack, handle]
                            if feet:
                                parts.append(
                                    connect(
                                        Node(
                                            CALL,
                                            "foot",
                                            [var("fs"), var("fc"), var("fpx1"), var("fpy")],
                                        ),
                                        Node(
                                            CALL,
                                            "foot",
                                            [var("fs"), var("fc"), var("fpx2"), var("fpy")],
                                        ),
                                    )
                                )
                                params += ["fs", "fc", "fpx1", "fpx2", "fpy"]
                            if med:
                                # A raw circular medallion on the top rail.
                                parts.append(
                                    tf(prim("circle"), var("mr"), 0.0, var("mx"), var("my"))
                                )
                                params += ["mr", "mx", "my"]
                            if rail:
                                # A raw run of slat lines along the base.
                                parts.append(
                                    rep(
                                        tf(prim("line"), var("rl"), 0.0, var("rx"), var("ry")),
                                        var("rn"),
                                        gm(1.0, 0.0, var("rdx"), 0.0),
                                    )
                                )
                                params += ["rl", "rx", "ry", "rn", "rdx"]
                            subs.append(make_sub(name, params, connect(*parts), 3))
    return tuple(subs)


def _furniture_sample(rng):
    return {
        "kind": str(rng.choice(["dresser", "sideboard"])),
        "n_drawers": int(rng.choice([2, 3, 4])),
        "knobs": int(rng.choice([1, 2])),
        "feet": int(rng.choice([0, 1])),
        "med": int(rng.choice([0, 1])),
        "rail": int(rng.choice([0, 1])),
        "rail_n": int(rng.choice([3, 4])),
        "drawer_w": float(rng.choice([2.6, 3.2])),
        "drawer_h": float(rng.choice([0.8, 1.0])),
        "knob_r": float(rng.choice([0.12, 0.18])),
        "foot_s": float(rng.choice([0.3, 0.4])),
    }


def _furniture_build(params, subs_by_name):
    kind = params["kind"]
    nd = params["n_drawers"]
    dt = params["knobs"]
    dw, dh = params["drawer_w"], params["drawer_h"]
    gap = 0.15
    kr = params["knob_r"]
    values = {"dw": dw, "dh": dh, "dkr": kr, "dkb": kr * 0.8}
    if dt == 2:
        values["dkx1"] = -dw * 0.3
        values["dkx2"] = dw * 0.3
    if kind == "dresser":
        step = dh + gap
        # Copies land at step, 2*step, ...; dy0 centers the stack on y=0.
        values["dy0"] = -(nd + 1) * step / 2.0
        values["step"] = step
        values["fw"] = dw + 0.4
        values["fh"] = nd * step + 0.4
        values["fx"] = 0.0
        values["fy"] = 0.0
        frame_bottom = -values["fh"] / 2.0
        foot_xs = (-(dw / 2.0 - 0.3), dw / 2.0 - 0.3)
    else:
        step = dw + 0.25
        values["dy0"] = 0.0
        values["step"] = step
        values["fw"] = nd * step + 0.4
        values["fh"] = dh + 0.4
        values["fx"] = (nd + 1) * step / 2.0
        values["fy"] = 0.0
        frame_bottom = -values["fh"] / 2.0
        foot_xs = (values["fx"] - values["fw"] / 2.0 + 0.4, values["fx"] + values["fw"] / 2.0 - 0.4)
    values.update(
        {
            "hkr": kr * 1.4,
            "hkb": kr * 1.1,
            "hkx": values["fx"],
            "hky": values["fh"] / 2.0 + 0.2,
        }
    )
    if params["feet"]:
        values["fs"] = params["foot_s"]
        values["fc"] = params["foot_s"] * 0.4
        values["fpx1"], values["fpx2"] = foot_xs
        values["fpy"] = frame_bottom - params["foot_s"] / 2.0 - 0.05
    if params["med"]:
        values.update(
            {"mr": 0.25, "mx": values["fx"], "my": values["fh"] / 2.0 + 0.55}
        )
    if params["rail"]:
        rn = params["rail_n"]
        rdx = values["fw"] / (rn + 1)
        values.update(
            {
                "rl": rdx * 0.6,
                "rx": values["fx"] - values["fw"] / 2.0,
                "ry": frame_bottom - 0.3,
                "rn": rn,
                "rdx": rdx,
            }
        )
    name = (
        f"furn_{kind}_{nd}d_{dt}k_{params['feet']}f"
        f"_{params['med']}m_{params['rail']}r"
    )
    return _call(name, subs_by_name, values)


# ---------------------------------------------------------------- registry

def _make_def(name, subroutines, sampler, builder):
    subs_by_name = {s.name: s for s in subroutines}

    def build(params):
        return builder(params, subs_by_name)

    return SubdomainDef(
        name=name,
        domain="drawings",
        base_symbols=dict(DRAWING_BASE_SYMBOLS),
        subroutines=subroutines,
        mode="sample",
        sample_params=sampler,
        build_program=build,
    )


def drawing_subdomains():
    return {
        "nuts_bolts": _make_def("nuts_bolts", _nuts_subroutines(), _nuts_sample, _nuts_build),
        "vehicles": _make_def("vehicles", _vehicles_subroutines(), _vehicles_sample, _vehicles_build),
        "gadgets": _make_def("gadgets", _gadgets_subroutines(), _gadgets_sample, _gadgets_build),
        "furniture": _make_def("furniture", _furniture_subroutines(), _furniture_sample, _furniture_build),
    }
