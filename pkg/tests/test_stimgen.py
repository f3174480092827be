"""Stimulus generation: determinism, uniqueness, and template invariants."""

import pytest

from partlex.errors import DataError
from partlex.sexpr import program_length
from partlex.stimgen import (
    LEVELS,
    SUBDOMAINS,
    corpus_summary,
    generate_stimuli,
    read_corpus,
    write_corpus,
)
from partlex.towers import eval_tower


def test_same_seed_reproduces_the_sample_exactly():
    a = generate_stimuli("nuts_bolts", n=20, seed=3)
    b = generate_stimuli("nuts_bolts", n=20, seed=3)
    assert [s.id for s in a] == [s.id for s in b]
    assert all(x.programs == y.programs for x, y in zip(a, b))


def test_different_seeds_draw_different_samples():
    a = {s.id for s in generate_stimuli("houses", n=30, seed=0)}
    b = {s.id for s in generate_stimuli("houses", n=30, seed=1)}
    assert a != b


def test_render_digests_are_unique_within_a_sample():
    stimuli = generate_stimuli("gadgets", n=40, seed=5)
    assert len({s.digest for s in stimuli}) == 40


def test_every_house_ground_floor_is_a_permutation_of_window_bricks_door():
    for stim in generate_stimuli("houses", n=40, seed=2):
        assert sorted(stim.params["ground"]) == ["b", "d", "w"]


def test_castle_stacks_are_shorter_than_the_wall():
    for stim in generate_stimuli("castles", n=40, seed=2):
        assert stim.params["stack_left"] < stim.params["height"]
        assert stim.params["stack_right"] < stim.params["height"]


def test_tower_stimuli_evaluate_within_the_grid():
    for stim in generate_stimuli("bridges", n=25, seed=4):
        placements = eval_tower(stim.programs[0])  # raises if out of bounds
        assert placements


def test_ground_truth_programs_exist_at_every_level():
    stim = generate_stimuli("vehicles", n=1, seed=0)[0]
    lengths = [program_length(stim.programs[level]) for level in LEVELS]
    assert sorted(lengths, reverse=True) == lengths  # non-increasing with level
    assert program_length(stim.programs[3]) == 1


def test_corpus_file_round_trip(tmp_path):
    stimuli = generate_stimuli("cities", n=15, seed=6)
    path = tmp_path / "corpus.jsonl"
    write_corpus(stimuli, str(path))
    loaded = read_corpus(str(path))
    assert [s.id for s in loaded] == [s.id for s in stimuli]
    for orig, back in zip(stimuli, loaded):
        assert back.programs == orig.programs
        assert back.params == orig.params
        assert back.digest == orig.digest


def test_corpus_round_trip_is_byte_stable(tmp_path):
    stimuli = generate_stimuli("furniture", n=10, seed=9)
    first = tmp_path / "a.jsonl"
    second = tmp_path / "b.jsonl"
    write_corpus(stimuli, str(first))
    write_corpus(read_corpus(str(first)), str(second))
    assert first.read_bytes() == second.read_bytes()


def test_corpus_summary_levels():
    stimuli = generate_stimuli("nuts_bolts", n=10, seed=1)
    summary = corpus_summary(stimuli)
    assert set(summary) == set(LEVELS)
    means = [summary[level]["mean"] for level in LEVELS]
    assert means == sorted(means, reverse=True)


def test_invalid_requests_are_rejected():
    with pytest.raises(DataError):
        generate_stimuli("nuts_bolts", n=0, seed=0)
    with pytest.raises(KeyError):
        SUBDOMAINS["no_such_subdomain"]


def test_malformed_corpus_file_is_a_data_error(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"not": "valid stimulus record"\n')
    with pytest.raises(DataError):
        read_corpus(str(path))
