"""IBM Model 1 alignment between program tokens and description words.

The model estimates P(word | token) by EM over (token sequence, word list)
pairs. Alignments factorize per word, so the MAP alignment is the per-word
argmax over the tokens present in a sequence. Library quality is scored by
cross-validated mean per-word log-likelihood with stimuli held out in
batches.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from ._em import em_fit
from .descriptions import Description
from .errors import DataError
from .library import rewrite
from .sexpr import tokenize
from .stimgen import atomic_write_text

SCORE_FLOOR = 1e-7


@dataclass(frozen=True)
class TranslationTable:
    tokens: tuple  # token vocabulary, sorted
    words: tuple  # word vocabulary, sorted
    probs: object  # ndarray (n_tokens, n_words), rows sum to 1
    meta: dict = field(default_factory=dict)

    def token_index(self):
        return {t: i for i, t in enumerate(self.tokens)}

    def word_index(self):
        return {w: i for i, w in enumerate(self.words)}

    def prob(self, word, token, floor=SCORE_FLOOR):
        """Scoring-time lookup; unseen entries and tiny masses are floored."""
        try:
            p = self.probs[self.token_index()[token], self.word_index()[word]]
        except KeyError:
            return floor
        return max(float(p), floor)

    def to_json(self) -> str:
        data = {
            "meta": self.meta,
            "tokens": list(self.tokens),
            "words": list(self.words),
            "probs": {
                t: [[w, float(p)] for w, p in zip(self.words, row) if p > 0]
                for t, row in zip(self.tokens, self.probs)
            },
        }
        return json.dumps(data, sort_keys=True)

    @classmethod
    def from_json(cls, text: str):
        data = json.loads(text)
        tokens = tuple(data["tokens"])
        words = tuple(data["words"])
        widx = {w: i for i, w in enumerate(words)}
        probs = np.zeros((len(tokens), len(words)))
        for ti, t in enumerate(tokens):
            for w, p in data["probs"][t]:
                probs[ti, widx[w]] = p
        return cls(tokens=tokens, words=words, probs=probs, meta=data["meta"])

    def save(self, path: str):
        atomic_write_text(path, self.to_json() + "\n")


def fit_ibm1(pairs, max_iter: int = 50, tol: float = 1e-6, backend=None) -> TranslationTable:
    """EM-fit P(word | token) from (token list, word list) pairs."""
    pairs = list(pairs)
    if not pairs:
        raise DataError("fit_ibm1 needs a nonempty corpus")
    for toks, words in pairs:
        if not toks or not words:
            raise DataError("every training pair needs nonempty tokens and words")
    tokens = tuple(sorted({t for toks, _ in pairs for t in toks}))
    words = tuple(sorted({w for _, ws in pairs for w in ws}))
    tidx = {t: i for i, t in enumerate(tokens)}
    widx = {w: i for i, w in enumerate(words)}

    t_flat, t_off = [], [0]
    w_flat, w_off = [], [0]
    for toks, ws in pairs:
        t_flat.extend(tidx[t] for t in toks)
        w_flat.extend(widx[w] for w in ws)
        t_off.append(len(t_flat))
        w_off.append(len(w_flat))
    table, history = em_fit(
        np.asarray(t_flat, dtype=np.int64),
        np.asarray(t_off, dtype=np.int64),
        np.asarray(w_flat, dtype=np.int64),
        np.asarray(w_off, dtype=np.int64),
        len(tokens),
        len(words),
        max_iter,
        tol,
        backend,
    )
    for a, b in zip(history, history[1:]):
        if b < a - 1e-9:
            raise AssertionError(f"EM log-likelihood decreased: {a} -> {b}")
    sums = table.sum(axis=1)
    if not np.allclose(sums, 1.0, atol=1e-9):
        raise AssertionError("translation table rows do not normalize")
    return TranslationTable(
        tokens=tokens,
        words=words,
        probs=table,
        meta={"iterations": len(history), "final_loglik": history[-1]},
    )


@dataclass(frozen=True)
class AlignmentRecord:
    stimulus_id: str
    alignments: tuple  # of (word, aligned token, log P(word|token))
    mean_loglik: float


def map_align(table: TranslationTable, tokens, words, floor=SCORE_FLOOR) -> AlignmentRecord:
    """Align each word to its argmax token among those in the sequence.

    Ties break toward the earliest token in sequence order; words unseen in
    training score at the floor probability.
    """
    if not tokens or not words:
        raise DataError("map_align needs nonempty tokens and words")
    tidx = table.token_index()
    widx = table.word_index()

    def lookup(w, t):
        if w in widx and t in tidx:
            return max(float(table.probs[tidx[t], widx[w]]), floor)
        return floor

    out = []
    total = 0.0
    for w in words:
        best_tok, best_p = tokens[0], lookup(w, tokens[0])
        for t in tokens[1:]:
            p = lookup(w, t)
            if p > best_p:
                best_tok, best_p = t, p
        lp = math.log(best_p)
        total += lp
        out.append((w, best_tok, lp))
    return AlignmentRecord(
        stimulus_id="", alignments=tuple(out), mean_loglik=total / len(words)
    )


@dataclass(frozen=True)
class CrossValReport:
    subdomain: str
    level: int
    folds: tuple  # of tuples of stimulus ids
    fold_means: tuple
    overall: float  # mean over all held-out words, pooled


def cross_validate(
    stimuli,
    descriptions,
    library,
    batch: int = 5,
    seed: int = 0,
    max_iter: int = 50,
    tol: float = 1e-6,
    normalizer=None,
) -> CrossValReport:
    """Held-out alignment score of ``library`` on a described corpus.

    Stimuli are shuffled by seed and held out in batches; for each fold the
    table is fit on the remaining descriptions and every held-out
    description is scored via its MAP alignment. Token sequences come from
    rewriting each base program into the library.
    """
    if batch < 1:
        raise DataError("batch must be >= 1")
    by_stim = {}
    for d in descriptions:
        by_stim.setdefault(d.stimulus_id, []).append(d)
    token_seqs = {}
    for s in stimuli:
        if s.id not in by_stim:
            raise DataError(f"stimulus {s.id} has no description")
        token_seqs[s.id] = tokenize(rewrite(s.programs[0], library))

    ids = [s.id for s in stimuli]
    rng = np.random.default_rng(seed)
    order = [ids[i] for i in rng.permutation(len(ids))]
    folds = [tuple(order[i : i + batch]) for i in range(0, len(order), batch)]

    def pairs_for(id_set):
        out = []
        for sid in ids:
            if sid in id_set:
                for d in by_stim[sid]:
                    out.append((token_seqs[sid], d.what_words(normalizer)))
        return out

    fold_means = []
    pooled_total = 0.0
    pooled_words = 0
    for fold in folds:
        held = set(fold)
        table = fit_ibm1(pairs_for(set(ids) - held), max_iter=max_iter, tol=tol)
        fold_total = 0.0
        fold_words = 0
        for sid in fold:
            for d in by_stim[sid]:
                rec = map_align(table, token_seqs[sid], d.what_words(normalizer))
                fold_total += rec.mean_loglik * len(rec.alignments)
                fold_words += len(rec.alignments)
        fold_means.append(fold_total / fold_words)
        pooled_total += fold_total
        pooled_words += fold_words
    return CrossValReport(
        subdomain=library.subdomain,
        level=library.level,
        folds=tuple(folds),
        fold_means=tuple(fold_means),
        overall=pooled_total / pooled_words,
    )


def synth_descriptions(
    stimuli, library, noise: float = 0.0, synonyms: int = 1, seed: int = 0
) -> list:
    """Emit one synthetic description per stimulus from a library's tokens.

    Each token of the stimulus's level-k program becomes one what-word,
    ``<token>_s<j>`` with the synonym index drawn per occurrence; with
    probability ``noise`` the word is replaced by a draw from the corpus's
    global word unigram distribution.
    """
    if not 0 <= noise < 1:
        raise DataError("noise must be in [0, 1)")
    if synonyms < 1:
        raise DataError("synonyms must be >= 1")
    rng = np.random.default_rng(seed)
    level = library.level
    clean = []
    for s in stimuli:
        toks = tokenize(s.programs[level])
        words = []
        for t in toks:
            j = int(rng.integers(synonyms))
            words.append(t if synonyms == 1 else f"{t}_s{j}")
        clean.append(words)
    vocab = sorted({w for ws in clean for w in ws})
    counts = {w: 0 for w in vocab}
    for ws in clean:
        for w in ws:
            counts[w] += 1
    total = sum(counts.values())
    unigram = np.array([counts[w] / total for w in vocab])
    out = []
    for s, words in zip(stimuli, clean):
        final = []
        for w in words:
            if noise > 0 and rng.random() < noise:
                w = vocab[int(rng.choice(len(vocab), p=unigram))]
            final.append(w)
        steps = tuple((w, "") for w in final)
        out.append(Description(stimulus_id=s.id, participant_id="synth", steps=steps))
    return out
