"""Procedural stimulus generation for the eight subdomains.

Each stimulus is built as a single call into its subdomain's level-3
library and macro-expanded to obtain the ground-truth programs at levels
2, 1 and 0. Drawing subdomains rejection-sample parameterizations until
``n`` distinct renders are collected; tower subdomains enumerate their
whole parameter space, drop any structure that leaves the grid, and
sample ``n`` survivors without replacement.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from ..drawing import eval_drawing
from ..errors import DataError, EvalError
from ..library import expand_program
from ..sexpr import Node, parse_sexpr, print_sexpr, program_length
from ..towers import eval_tower
from .defs import SubdomainDef
from .drawings import drawing_subdomains
from .towers import tower_subdomains

SUBDOMAINS: dict = {}
SUBDOMAINS.update(drawing_subdomains())
SUBDOMAINS.update(tower_subdomains())

DRAWING_SUBDOMAINS = tuple(n for n, d in SUBDOMAINS.items() if d.domain == "drawings")
TOWER_SUBDOMAINS = tuple(n for n, d in SUBDOMAINS.items() if d.domain == "towers")

LEVELS = (0, 1, 2, 3)


@dataclass(frozen=True)
class Stimulus:
    id: str
    domain: str
    subdomain: str
    params: dict
    programs: dict  # level -> Node
    digest: str


def _sha(text: str) -> str:
    return hashlib.sha1(text.encode("utf-8")).hexdigest()


def render_digest(subdef: SubdomainDef, base_program: Node) -> str:
    """Hash of the rendered output (geometry or typed block placements)."""
    if subdef.domain == "drawings":
        geom = eval_drawing(base_program)
        segs = tuple(tuple(round(v, 6) for v in s) for s in geom.segments)
        circs = tuple(tuple(round(v, 6) for v in c) for c in geom.circles)
        return _sha(repr((segs, circs)))[:16]
    placements = eval_tower(base_program)
    return _sha(repr(sorted((p.kind, p.x, p.y) for p in placements)))[:16]


def _make_stimulus(subdef, params, top_program):
    lib3 = subdef.library(3)
    programs = {3: top_program}
    for level in (2, 1, 0):
        programs[level] = expand_program(top_program, lib3, to_level=level)
    digest = render_digest(subdef, programs[0])
    return Stimulus(
        id=_sha(print_sexpr(programs[0]))[:12],
        domain=subdef.domain,
        subdomain=subdef.name,
        params=params,
        programs=programs,
        digest=digest,
    )


def generate_stimuli(subdomain, n: int = 250, seed: int = 0) -> list:
    """Generate ``n`` render-distinct stimuli, deterministically per seed."""
    subdef = SUBDOMAINS[subdomain] if isinstance(subdomain, str) else subdomain
    if n < 1:
        raise DataError("n must be >= 1")
    rng = np.random.default_rng(seed)
    if subdef.mode == "sample":
        return _generate_sampled(subdef, n, rng)
    return _generate_enumerated(subdef, n, rng)


def _generate_sampled(subdef, n, rng):
    out = []
    seen = set()
    max_attempts = 400 * n
    for _ in range(max_attempts):
        params = subdef.sample_params(rng)
        stim = _make_stimulus(subdef, params, subdef.build_program(params))
        if stim.digest in seen:
            continue
        seen.add(stim.digest)
        out.append(stim)
        if len(out) == n:
            return out
    raise DataError(
        f"{subdef.name}: only {len(out)} distinct stimuli in {max_attempts} attempts"
    )


def _generate_enumerated(subdef, n, rng):
    survivors = []
    seen = set()
    for params in subdef.enumerate_params():
        stim = _make_stimulus(subdef, params, subdef.build_program(params))
        try:
            eval_tower(stim.programs[0])
        except EvalError:
            continue
        if stim.digest in seen:
            continue
        seen.add(stim.digest)
        survivors.append(stim)
    if len(survivors) < n:
        raise DataError(
            f"{subdef.name}: only {len(survivors)} distinct valid stimuli, need {n}"
        )
    idx = sorted(rng.choice(len(survivors), size=n, replace=False).tolist())
    return [survivors[i] for i in idx]


def corpus_summary(stimuli) -> dict:
    """Per-level min/mean/max of program token length."""
    if not stimuli:
        raise DataError("corpus_summary needs a nonempty corpus")
    out = {}
    for level in LEVELS:
        lengths = [program_length(s.programs[level]) for s in stimuli]
        out[level] = {
            "min": min(lengths),
            "mean": sum(lengths) / len(lengths),
            "max": max(lengths),
        }
    return out


# ------------------------------------------------------------- corpus files

def atomic_write_text(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_corpus(stimuli, path: str):
    lines = []
    for s in stimuli:
        record = {
            "id": s.id,
            "domain": s.domain,
            "subdomain": s.subdomain,
            "params": s.params,
            "digest": s.digest,
        }
        for level in LEVELS:
            record[f"program_L{level}"] = print_sexpr(s.programs[level])
        lines.append(json.dumps(record, sort_keys=True))
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_corpus(path: str) -> list:
    out = []
    inventories = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}:{lineno}: invalid JSON ({exc})")
            name = record.get("subdomain")
            if name not in SUBDOMAINS:
                raise DataError(f"{path}:{lineno}: unknown subdomain {name!r}")
            subdef = SUBDOMAINS[name]
            if name not in inventories:
                inventories[name] = {
                    lv: subdef.library(lv).symbol_inventory() for lv in LEVELS
                }
            programs = {
                lv: parse_sexpr(record[f"program_L{lv}"], inventories[name][lv])
                for lv in LEVELS
            }
            out.append(
                Stimulus(
                    id=record["id"],
                    domain=record["domain"],
                    subdomain=name,
                    params=record["params"],
                    programs=programs,
                    digest=record["digest"],
                )
            )
    return out
