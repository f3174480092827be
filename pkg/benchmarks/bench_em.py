"""Benchmark the two EM E-step backends (numba JIT vs. vectorized numpy).

Builds a realistic alignment corpus (synthetic descriptions over one
subdomain), then times full EM fits under both backends and checks that
they produce identical tables.

Run:  python3 benchmarks/bench_em.py [--subdomain nuts_bolts] [--repeat 3]

The numba backend is the default at import time; set PARTLEX_NO_NUMBA=1
to run the package without numba entirely (this script still compares
both by passing the backend explicitly, so it must run without the flag).
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from partlex._em import em_fit
from partlex.alignment import synth_descriptions
from partlex.library import rewrite
from partlex.sexpr import tokenize
from partlex.stimgen import SUBDOMAINS, generate_stimuli


def build_arrays(subdomain: str, n: int, seed: int):
    subdef = SUBDOMAINS[subdomain]
    stimuli = generate_stimuli(subdomain, n=n, seed=seed)
    library = subdef.library(1)
    descriptions = synth_descriptions(stimuli, library, noise=0.2, synonyms=2, seed=seed)
    words_by_stim = {d.stimulus_id: d.what_words() for d in descriptions}
    pairs = [
        (tokenize(rewrite(s.programs[0], library)), words_by_stim[s.id])
        for s in stimuli
    ]
    tokens = sorted({t for toks, _ in pairs for t in toks})
    words = sorted({w for _, ws in pairs for w in ws})
    tidx = {t: i for i, t in enumerate(tokens)}
    widx = {w: i for i, w in enumerate(words)}
    t_flat, t_off, w_flat, w_off = [], [0], [], [0]
    for toks, ws in pairs:
        t_flat.extend(tidx[t] for t in toks)
        w_flat.extend(widx[w] for w in ws)
        t_off.append(len(t_flat))
        w_off.append(len(w_flat))
    return (
        np.asarray(t_flat, dtype=np.int64),
        np.asarray(t_off, dtype=np.int64),
        np.asarray(w_flat, dtype=np.int64),
        np.asarray(w_off, dtype=np.int64),
        len(tokens),
        len(words),
    )


def run(backend: str, arrays, max_iter: int):
    t_flat, t_off, w_flat, w_off, n_tokens, n_words = arrays
    start = time.perf_counter()
    table, history = em_fit(
        t_flat, t_off, w_flat, w_off, n_tokens, n_words, max_iter, 0.0, backend
    )
    elapsed = time.perf_counter() - start
    return table, history, elapsed


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--subdomain", default="nuts_bolts", choices=sorted(SUBDOMAINS))
    parser.add_argument("--n", type=int, default=250)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--max-iter", type=int, default=50)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    arrays = build_arrays(args.subdomain, args.n, args.seed)
    n_pairs = len(arrays[1]) - 1
    print(
        f"corpus: {args.subdomain}, {n_pairs} pairs, "
        f"{arrays[4]} tokens x {arrays[5]} words, {args.max_iter} EM iterations"
    )

    # Warm-up: triggers numba compilation so timings measure steady state.
    table_numba, hist_numba, _ = run("numba", arrays, args.max_iter)
    table_numpy, hist_numpy, _ = run("numpy", arrays, args.max_iter)
    if not np.allclose(table_numba, table_numpy, atol=1e-12, rtol=0.0):
        raise SystemExit("backends disagree on the fitted table")
    if not np.allclose(hist_numba, hist_numpy, atol=1e-9, rtol=0.0):
        raise SystemExit("backends disagree on the log-likelihood history")
    print(f"backends agree (final log-likelihood {hist_numba[-1]:.6f})")

    for backend in ("numba", "numpy"):
        times = [run(backend, arrays, args.max_iter)[2] for _ in range(args.repeat)]
        print(
            f"{backend:>6}: best {min(times) * 1e3:8.1f} ms   "
            f"mean {sum(times) / len(times) * 1e3:8.1f} ms over {args.repeat} runs"
        )


if __name__ == "__main__":
    main()
