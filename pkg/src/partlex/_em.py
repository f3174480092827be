"""EM inner loop for the translation model, with two interchangeable backends.

The hot path is one expectation/likelihood pass over all (token, word)
pairs. The default backend compiles it with numba; setting the environment
variable ``PARTLEX_NO_NUMBA`` (to any value) selects a vectorized numpy
fallback instead. Both produce identical results (see benchmarks/bench_em.py).

Sequences are passed flattened: ``t_flat``/``w_flat`` hold integer ids and
``t_off``/``w_off`` are offsets such that pair ``i`` owns the slice
``[off[i], off[i+1])``.
"""

from __future__ import annotations

import math
import os

import numpy as np


def _e_step_loops(t_flat, t_off, w_flat, w_off, table, counts):
    """One E-step pass; accumulates into ``counts`` and returns the corpus
    log-likelihood of the current ``table``."""
    ll = 0.0
    n_pairs = t_off.shape[0] - 1
    for i in range(n_pairs):
        t0, t1 = t_off[i], t_off[i + 1]
        w0, w1 = w_off[i], w_off[i + 1]
        log_len = math.log(t1 - t0)
        for wi in range(w0, w1):
            w = w_flat[wi]
            denom = 0.0
            for ti in range(t0, t1):
                denom += table[t_flat[ti], w]
            ll += math.log(denom) - log_len
            for ti in range(t0, t1):
                t = t_flat[ti]
                counts[t, w] += table[t, w] / denom
    return ll


def _e_step_numpy(t_flat, t_off, w_flat, w_off, table, counts):
    ll = 0.0
    n_pairs = t_off.shape[0] - 1
    for i in range(n_pairs):
        toks = t_flat[t_off[i] : t_off[i + 1]]
        words = w_flat[w_off[i] : w_off[i + 1]]
        sub = table[np.ix_(toks, words)]
        denom = sub.sum(axis=0)
        ll += float(np.log(denom).sum()) - len(words) * math.log(len(toks))
        np.add.at(counts, np.ix_(toks, words), sub / denom)
    return ll


USE_NUMBA = "PARTLEX_NO_NUMBA" not in os.environ

if USE_NUMBA:
    from numba import njit

    _e_step_numba = njit(cache=True)(_e_step_loops)


def e_step(t_flat, t_off, w_flat, w_off, table, counts, backend=None):
    """Dispatch one E-step to the selected backend ("numba" | "numpy")."""
    if backend is None:
        backend = "numba" if USE_NUMBA else "numpy"
    if backend == "numba":
        if not USE_NUMBA:
            raise RuntimeError("numba backend disabled by PARTLEX_NO_NUMBA")
        return _e_step_numba(t_flat, t_off, w_flat, w_off, table, counts)
    if backend == "numpy":
        return _e_step_numpy(t_flat, t_off, w_flat, w_off, table, counts)
    raise ValueError(f"unknown backend {backend!r}")


def em_fit(t_flat, t_off, w_flat, w_off, n_tokens, n_words, max_iter, tol, backend=None):
    """Run IBM Model 1 EM from a uniform table.

    Returns (table, log-likelihood history). The history has one entry per
    completed iteration; EM guarantees it is non-decreasing, which callers
    assert.
    """
    table = np.full((n_tokens, n_words), 1.0 / n_words)
    history = []
    for _ in range(max_iter):
        counts = np.zeros_like(table)
        ll = e_step(t_flat, t_off, w_flat, w_off, table, counts, backend)
        history.append(ll)
        row_sums = counts.sum(axis=1, keepdims=True)
        nonzero = row_sums[:, 0] > 0
        table[nonzero] = counts[nonzero] / row_sums[nonzero]
        if len(history) >= 2 and history[-1] - history[-2] < tol:
            break
    return table, history
