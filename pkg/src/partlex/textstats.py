"""Description normalization and corpus statistics.

Covers the rule-based text normalizer, pointwise mutual information
between words and subdomains, Jensen-Shannon distance between subdomain
word distributions with a label-permutation null, a permutation one-way
ANOVA, and the description-length regression.

Conventions (stated in every report that carries them): PMI uses the
natural log; JSD is the square root of the base-2 Jensen-Shannon
divergence, so identical distributions score 0 and disjoint ones score 1.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .errors import DataError

_WORD_RE = re.compile(r"[a-z0-9]+")

# Words the -s/-es/-ies rules would mangle.
_SINGULAR_EXCEPTIONS = {
    "series",
    "species",
    "pliers",
    "scissors",
    "chassis",
    "axis",
    "radius",
    "plus",
    "minus",
    "times",
}


def _load_data_text(name: str) -> str:
    return resources.files("partlex.data").joinpath(name).read_text(encoding="utf-8")


def load_stopwords() -> frozenset:
    words = set()
    for line in _load_data_text("stopwords.txt").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line)
    return frozenset(words)


def load_typos() -> dict:
    return dict(json.loads(_load_data_text("typos.json")))


_STOPWORDS = load_stopwords()
_TYPOS = load_typos()


def singularize(word: str) -> str:
    if word in _SINGULAR_EXCEPTIONS or len(word) <= 3:
        return word
    if word.endswith("ies"):
        return word[:-3] + "y"
    if word.endswith("sses") or word.endswith("xes") or word.endswith("ches") or word.endswith("shes"):
        return word[:-2]
    if word.endswith("s") and not word.endswith("ss"):
        return word[:-1]
    return word


def normalize_description(raw: str, stopwords=None, typos=None) -> list:
    """Lowercase, strip punctuation, fix typos, drop stop words, singularize."""
    stopwords = _STOPWORDS if stopwords is None else stopwords
    typos = _TYPOS if typos is None else typos
    out = []
    for word in _WORD_RE.findall(raw.lower()):
        word = typos.get(word, word)
        if word in stopwords:
            continue
        out.append(singularize(word))
    return out


# --------------------------------------------------------------- distributions

@dataclass(frozen=True)
class WordDistribution:
    label: str
    freqs: dict  # word -> relative frequency
    total: int  # token count

    def __post_init__(self):
        if self.total < 1 or not self.freqs:
            raise DataError(f"empty word distribution for {self.label!r}")
        s = sum(self.freqs.values())
        if abs(s - 1.0) > 1e-12:
            raise DataError(f"frequencies for {self.label!r} sum to {s}, not 1")

    @classmethod
    def from_words(cls, label: str, words) -> "WordDistribution":
        words = list(words)
        if not words:
            raise DataError(f"no words for distribution {label!r}")
        counts = {}
        for w in words:
            counts[w] = counts.get(w, 0) + 1
        n = len(words)
        return cls(label=label, freqs={w: c / n for w, c in counts.items()}, total=n)


# ------------------------------------------------------------------------ PMI

@dataclass(frozen=True)
class PMITable:
    labels: tuple
    counts: dict  # word -> {label: count}
    label_totals: dict  # label -> token count
    grand_total: int

    def pmi(self, word: str, label: str) -> float:
        """ln( p(w,d) / (p(w) p(d)) ); -inf when the word misses the label."""
        per = self.counts.get(word)
        if per is None:
            raise DataError(f"unknown word {word!r}")
        joint = per.get(label, 0)
        if joint == 0:
            return -math.inf
        p_wd = joint / self.grand_total
        p_w = sum(per.values()) / self.grand_total
        p_d = self.label_totals[label] / self.grand_total
        return math.log(p_wd / (p_w * p_d))

    def word_count(self, word: str) -> int:
        return sum(self.counts.get(word, {}).values())

    def top_k(self, label: str, k: int = 10, min_count: int = 5) -> list:
        """Highest-PMI (word, pmi) pairs for a label, thresholded by count."""
        scored = [
            (w, self.pmi(w, label))
            for w in self.counts
            if self.word_count(w) >= min_count and self.counts[w].get(label, 0) > 0
        ]
        scored.sort(key=lambda wp: (-wp[1], wp[0]))
        return scored[:k]


def pmi_table(groups: dict) -> PMITable:
    """Build the word/subdomain PMI table from label -> word-list groups."""
    if len(groups) < 2:
        raise DataError("pmi_table needs at least two subdomains")
    counts = {}
    label_totals = {}
    for label, words in groups.items():
        words = list(words)
        if not words:
            raise DataError(f"subdomain {label!r} has no words")
        label_totals[label] = len(words)
        for w in words:
            counts.setdefault(w, {}).setdefault(label, 0)
            counts[w][label] += 1
    return PMITable(
        labels=tuple(groups),
        counts=counts,
        label_totals=label_totals,
        grand_total=sum(label_totals.values()),
    )


# ------------------------------------------------------------------------ JSD

def _jsd_distance(p: np.ndarray, q: np.ndarray) -> float:
    m = 0.5 * (p + q)

    def kl(a, b):
        mask = a > 0
        return float(np.sum(a[mask] * np.log2(a[mask] / b[mask])))

    div = 0.5 * kl(p, m) + 0.5 * kl(q, m)
    return math.sqrt(max(div, 0.0))


def jsd_pairwise(dists) -> float:
    """Mean pairwise Jensen-Shannon distance over a shared vocabulary."""
    dists = list(dists)
    if len(dists) < 2:
        raise DataError("jsd_pairwise needs at least two distributions")
    vocab = sorted({w for d in dists for w in d.freqs})
    vecs = [np.array([d.freqs.get(w, 0.0) for w in vocab]) for d in dists]
    total = 0.0
    n_pairs = 0
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            total += _jsd_distance(vecs[i], vecs[j])
            n_pairs += 1
    return total / n_pairs


@dataclass(frozen=True)
class PermutationReport:
    statistic: float
    p_value: float
    n_perm: int
    null_mean: float
    null_sd: float
    meta: dict = field(default_factory=dict)


def _grouped_jsd(labels, word_lists):
    groups = {}
    for label, words in zip(labels, word_lists):
        groups.setdefault(label, []).extend(words)
    dists = [WordDistribution.from_words(lb, ws) for lb, ws in groups.items()]
    return jsd_pairwise(dists)


def permutation_test_jsd(trials, n_perm: int = 1000, seed: int = 0) -> PermutationReport:
    """Observed mean pairwise JSD vs. a label-permutation null."""
    if n_perm < 100:
        raise DataError("n_perm must be >= 100")
    trials = list(trials)
    labels = [label for label, _ in trials]
    word_lists = [list(words) for _, words in trials]
    if any(not ws for ws in word_lists):
        raise DataError("every trial needs at least one word")
    if len(set(labels)) < 2:
        raise DataError("permutation_test_jsd needs >= 2 distinct labels")
    observed = _grouped_jsd(labels, word_lists)
    rng = np.random.default_rng(seed)
    null = np.empty(n_perm)
    labels_arr = np.array(labels)
    for i in range(n_perm):
        perm = labels_arr[rng.permutation(len(labels_arr))]
        null[i] = _grouped_jsd(perm.tolist(), word_lists)
    p = (1 + int(np.sum(null >= observed))) / (1 + n_perm)
    return PermutationReport(
        statistic=observed,
        p_value=p,
        n_perm=n_perm,
        null_mean=float(null.mean()),
        null_sd=float(null.std()),
        meta={"statistic": "mean pairwise JSD (sqrt of base-2 divergence)"},
    )


# ---------------------------------------------------------------------- ANOVA

def _f_statistic(groups) -> float:
    all_vals = np.concatenate(groups)
    grand = all_vals.mean()
    k = len(groups)
    n = len(all_vals)
    ssb = sum(len(g) * (g.mean() - grand) ** 2 for g in groups)
    ssw = sum(float(np.sum((g - g.mean()) ** 2)) for g in groups)
    if ssw == 0.0:
        return 0.0 if ssb == 0.0 else math.inf
    return (ssb / (k - 1)) / (ssw / (n - k))


def anova_permutation(groups, n_perm: int = 1000, seed: int = 0) -> PermutationReport:
    """One-way F statistic with a label-permutation p-value."""
    groups = [np.asarray(g, dtype=float) for g in groups]
    if len(groups) < 2 or any(len(g) < 2 for g in groups):
        raise DataError("anova_permutation needs >= 2 groups of >= 2 values")
    observed = _f_statistic(groups)
    if observed == 0.0 and all(np.ptp(g) == 0 for g in groups):
        # All values identical: F undefined, reported as F=0, p=1.
        return PermutationReport(
            statistic=0.0, p_value=1.0, n_perm=n_perm, null_mean=0.0, null_sd=0.0,
            meta={"statistic": "one-way ANOVA F"},
        )
    rng = np.random.default_rng(seed)
    pooled = np.concatenate(groups)
    sizes = [len(g) for g in groups]
    null = np.empty(n_perm)
    for i in range(n_perm):
        perm = pooled[rng.permutation(len(pooled))]
        out, start = [], 0
        for size in sizes:
            out.append(perm[start : start + size])
            start += size
        null[i] = _f_statistic(out)
    # Strictly greater: permutations that recreate the observed grouping
    # (exact F ties) must not count as evidence for the null.
    p = (1 + int(np.sum(null > observed))) / (1 + n_perm)
    return PermutationReport(
        statistic=float(observed),
        p_value=p,
        n_perm=n_perm,
        null_mean=float(null.mean()),
        null_sd=float(null.std()),
        meta={"statistic": "one-way ANOVA F"},
    )


# ----------------------------------------------------------------- regression

@dataclass(frozen=True)
class FitResult:
    coefficients: tuple  # lowest order first
    r_squared: float
    rss: float


@dataclass(frozen=True)
class RegressionReport:
    linear: FitResult
    quadratic: FitResult
    f_quadratic: float  # nested-model F for adding the x^2 term
    df: tuple  # (1, n - 3)
    n: int


def _ols(x_cols, y):
    X = np.column_stack(x_cols)
    coef, _, rank, _ = np.linalg.lstsq(X, y, rcond=None)
    if rank < X.shape[1]:
        raise DataError("singular regression design (no variation in x)")
    resid = y - X @ coef
    rss = float(resid @ resid)
    tss = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if tss == 0.0 else 1.0 - rss / tss
    return FitResult(coefficients=tuple(float(c) for c in coef), r_squared=r2, rss=rss), resid, X


def length_regression(points) -> RegressionReport:
    """OLS of word count on program length, linear vs. quadratic."""
    points = list(points)
    if len(points) < 10:
        raise DataError("length_regression needs >= 10 points")
    x = np.array([float(p[0]) for p in points])
    y = np.array([float(p[1]) for p in points])
    ones = np.ones_like(x)
    linear, _, _ = _ols([ones, x], y)
    quadratic, resid, X = _ols([ones, x, x * x], y)
    n = len(points)
    eps = 1e-12 * max(1.0, float(y @ y))
    if quadratic.rss <= eps:
        f = 0.0 if linear.rss <= eps else math.inf
    else:
        f = (linear.rss - quadratic.rss) / (quadratic.rss / (n - 3))
    for col in X.T:
        if abs(float(col @ resid)) > 1e-8 * max(1.0, float(np.abs(col).sum())):
            raise AssertionError("regression residuals not orthogonal to design")
    return RegressionReport(
        linear=linear, quadratic=quadratic, f_quadratic=float(f), df=(1, n - 3), n=n
    )
