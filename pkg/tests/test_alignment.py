"""IBM Model 1 fitting, MAP alignment, and cross-validated scoring."""

import math

import numpy as np
import pytest

from partlex.alignment import (
    SCORE_FLOOR,
    TranslationTable,
    cross_validate,
    fit_ibm1,
    map_align,
    synth_descriptions,
)
from partlex.errors import DataError
from partlex.sexpr import tokenize
from partlex.stimgen import SUBDOMAINS, generate_stimuli


def test_single_pair_converges_to_certainty():
    table = fit_ibm1([(["A"], ["x"])])
    assert table.prob("x", "A") == 1.0
    assert table.meta["final_loglik"] == 0.0


def test_symmetric_pair_gives_both_tokens_probability_one():
    table = fit_ibm1([(["A", "B"], ["x"])])
    assert table.prob("x", "A") == 1.0
    assert table.prob("x", "B") == 1.0


def test_toy_corpus_disambiguates_within_50_iterations():
    pairs = [(["A"], ["x"]), (["B"], ["y"]), (["A", "B"], ["x", "y"])]
    table = fit_ibm1(pairs, max_iter=50)
    assert table.prob("x", "A") > 0.99
    assert table.prob("y", "B") > 0.99


def test_rows_normalize_and_likelihood_is_monotone():
    rng = np.random.default_rng(0)
    tokens = [f"t{i}" for i in range(6)]
    words = [f"w{i}" for i in range(8)]
    pairs = []
    for _ in range(30):
        toks = [tokens[i] for i in rng.integers(0, 6, size=4)]
        ws = [words[i] for i in rng.integers(0, 8, size=5)]
        pairs.append((toks, ws))
    table = fit_ibm1(pairs, max_iter=40, tol=0.0)
    assert np.allclose(table.probs.sum(axis=1), 1.0, atol=1e-9)
    # Monotonicity is asserted inside fit_ibm1; reaching here means it held.
    assert table.meta["iterations"] <= 40


def test_backends_agree():
    pairs = [(["A", "B", "C"], ["x", "y"]), (["B"], ["y"]), (["A", "C"], ["x", "z"])]
    with_numba = fit_ibm1(pairs, backend="numba")
    with_numpy = fit_ibm1(pairs, backend="numpy")
    assert np.allclose(with_numba.probs, with_numpy.probs, atol=1e-12)


def test_empty_corpus_or_pair_is_rejected():
    with pytest.raises(DataError):
        fit_ibm1([])
    with pytest.raises(DataError):
        fit_ibm1([(["A"], [])])


def test_map_align_argmax_and_floor():
    table = fit_ibm1([(["A"], ["x"]), (["B"], ["y"])])
    record = map_align(table, ["A", "B"], ["y", "unseen"])
    aligned = dict((w, t) for w, t, _ in record.alignments)
    assert aligned["y"] == "B"
    (_, _, lp_unseen) = record.alignments[1]
    assert lp_unseen == math.log(SCORE_FLOOR)


def test_map_align_ties_break_toward_the_earliest_token():
    # Uniform table: both tokens score every word identically.
    table = fit_ibm1([(["A", "B"], ["x"])])
    record = map_align(table, ["B", "A"], ["x"])
    assert record.alignments[0][1] == "B"


def test_translation_table_json_round_trip(tmp_path):
    table = fit_ibm1([(["A", "B"], ["x", "y"]), (["A"], ["x"])])
    back = TranslationTable.from_json(table.to_json())
    assert back.tokens == table.tokens and back.words == table.words
    assert np.allclose(back.probs, table.probs, atol=0)
    path = tmp_path / "table.json"
    table.save(str(path))
    assert TranslationTable.from_json(path.read_text()).meta == table.meta


def test_synth_descriptions_without_noise_echo_the_tokens():
    stimuli = generate_stimuli("nuts_bolts", n=5, seed=0)
    library = SUBDOMAINS["nuts_bolts"].library(2)
    descs = synth_descriptions(stimuli, library, noise=0.0, synonyms=1, seed=0)
    for stim, desc in zip(stimuli, descs):
        assert desc.what_words() == tokenize(stim.programs[2])


def test_synth_descriptions_validates_arguments():
    stimuli = generate_stimuli("nuts_bolts", n=2, seed=0)
    library = SUBDOMAINS["nuts_bolts"].library(1)
    with pytest.raises(DataError):
        synth_descriptions(stimuli, library, noise=1.0)
    with pytest.raises(DataError):
        synth_descriptions(stimuli, library, synonyms=0)


def test_cross_validate_folds_and_score_sign():
    stimuli = generate_stimuli("cities", n=10, seed=1)
    library = SUBDOMAINS["cities"].library(1)
    descs = synth_descriptions(stimuli, library, noise=0.1, synonyms=2, seed=1)
    report = cross_validate(stimuli, descs, library, batch=5, seed=1)
    assert len(report.folds) == 2
    assert sorted(sid for fold in report.folds for sid in fold) == sorted(s.id for s in stimuli)
    assert report.overall <= 0.0
    assert all(m <= 0.0 for m in report.fold_means)


def test_cross_validate_requires_descriptions_for_every_stimulus():
    stimuli = generate_stimuli("cities", n=4, seed=1)
    library = SUBDOMAINS["cities"].library(1)
    descs = synth_descriptions(stimuli[:3], library, seed=1)
    with pytest.raises(DataError):
        cross_validate(stimuli, descs, library)
