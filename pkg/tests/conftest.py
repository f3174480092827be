"""Shared fixtures: one seed-7 corpus of 250 stimuli per subdomain.

Generation is timed so the acceptance suite can assert the runtime budget,
and the full per-level rewrites are computed once and shared between the
semantic-equivalence and ground-truth-recovery checks.
"""

import time

import pytest

from partlex.library import rewrite
from partlex.stimgen import LEVELS, SUBDOMAINS, generate_stimuli

GEN_SEED = 7
GEN_N = 250


@pytest.fixture(scope="session")
def corpora():
    """name -> 250 stimuli (seed 7), plus the wall-clock generation time."""
    start = time.perf_counter()
    stimuli = {name: generate_stimuli(name, n=GEN_N, seed=GEN_SEED) for name in SUBDOMAINS}
    elapsed = time.perf_counter() - start
    return {"stimuli": stimuli, "generate_seconds": elapsed}


@pytest.fixture(scope="session")
def rewritten(corpora):
    """name -> level -> [rewrite(pi_base, L_level)] aligned with the corpus."""
    out = {}
    for name, stimuli in corpora["stimuli"].items():
        libs = {level: SUBDOMAINS[name].library(level) for level in LEVELS}
        out[name] = {
            level: [rewrite(s.programs[0], libs[level]) for s in stimuli]
            for level in LEVELS
        }
    return out
