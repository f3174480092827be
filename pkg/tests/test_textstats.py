"""Text normalization and corpus statistics."""

import math

import numpy as np
import pytest

from partlex.errors import DataError
from partlex.textstats import (
    WordDistribution,
    anova_permutation,
    jsd_pairwise,
    length_regression,
    normalize_description,
    permutation_test_jsd,
    pmi_table,
    singularize,
)


# --------------------------------------------------------------- normalizer

def test_normalizer_examples():
    assert normalize_description("Draw a sqaure.") == ["square"]
    assert normalize_description("two circles") == ["two", "circle"]
    assert normalize_description("") == []


def test_normalizer_lowercases_and_strips_punctuation():
    assert normalize_description("It's THE Window!") == ["window"]


def test_singularize_rules_and_exceptions():
    assert singularize("bodies") == "body"
    assert singularize("boxes") == "box"
    assert singularize("arches") == "arch"
    assert singularize("crosses") == "cross"
    assert singularize("blocks") == "block"
    assert singularize("glass") == "glass"
    assert singularize("series") == "series"


# ---------------------------------------------------------------------- PMI

def balanced_groups():
    # Four labels, 100 words each; "flange" is exclusive to label "a".
    groups = {label: ["block"] * 100 for label in "abcd"}
    groups["a"] = ["block"] * 95 + ["flange"] * 5
    return groups


def test_pmi_of_exclusive_word_in_balanced_data_is_ln4():
    table = pmi_table(balanced_groups())
    assert abs(table.pmi("flange", "a") - math.log(4)) < 1e-9


def test_pmi_marginals_are_consistent():
    table = pmi_table(balanced_groups())
    for word in table.counts:
        assert table.word_count(word) == sum(table.counts[word].values())
    assert table.grand_total == sum(table.label_totals.values())


def test_pmi_absent_pair_is_minus_infinity_and_unknown_word_rejected():
    table = pmi_table(balanced_groups())
    assert table.pmi("flange", "b") == -math.inf
    with pytest.raises(DataError):
        table.pmi("no_such_word", "a")


def test_pmi_top_k_applies_the_count_threshold():
    groups = balanced_groups()
    groups["a"] = ["block"] * 94 + ["flange"] * 5 + ["rare"]  # "rare" occurs once
    table = pmi_table(groups)
    top = table.top_k("a", k=10, min_count=5)
    assert all(word != "rare" for word, _ in top)
    assert top[0][0] == "flange"


def test_pmi_needs_two_labels():
    with pytest.raises(DataError):
        pmi_table({"a": ["x"]})


# ---------------------------------------------------------------------- JSD

def test_jsd_of_identical_distributions_is_zero():
    d1 = WordDistribution.from_words("a", ["x", "y", "y"])
    d2 = WordDistribution.from_words("b", ["x", "y", "y"])
    assert abs(jsd_pairwise([d1, d2])) < 1e-12


def test_jsd_of_disjoint_distributions_is_one():
    d1 = WordDistribution.from_words("a", ["x"])
    d2 = WordDistribution.from_words("b", ["y"])
    assert abs(jsd_pairwise([d1, d2]) - 1.0) < 1e-12


def test_planted_separation_reaches_the_minimal_p_value():
    trials = [("a", ["left"] * 5) for _ in range(15)]
    trials += [("b", ["right"] * 5) for _ in range(15)]
    report = permutation_test_jsd(trials, n_perm=1000, seed=0)
    assert report.p_value == 1 / 1001


def test_permutation_test_rejects_small_n_perm_and_single_label():
    trials = [("a", ["x"]), ("b", ["y"])]
    with pytest.raises(DataError):
        permutation_test_jsd(trials, n_perm=99)
    with pytest.raises(DataError):
        permutation_test_jsd([("a", ["x"]), ("a", ["y"])], n_perm=100)


def test_word_distribution_validates_frequencies():
    with pytest.raises(DataError):
        WordDistribution("a", {"x": 0.6}, total=5)
    with pytest.raises(DataError):
        WordDistribution.from_words("a", [])


# -------------------------------------------------------------------- ANOVA

def test_anova_detects_a_planted_group_effect():
    groups = [[0.0, 0.0, 0.01], [10.0, 10.0, 10.01]]
    report = anova_permutation(groups, n_perm=1000, seed=0)
    assert report.p_value <= 0.005


def test_anova_on_identical_values_reports_f_zero_p_one():
    report = anova_permutation([[3.0, 3.0], [3.0, 3.0]], n_perm=200, seed=0)
    assert report.statistic == 0.0 and report.p_value == 1.0


def test_anova_requires_two_groups_of_two():
    with pytest.raises(DataError):
        anova_permutation([[1.0, 2.0]])
    with pytest.raises(DataError):
        anova_permutation([[1.0, 2.0], [3.0]])


def test_anova_null_p_values_are_not_extreme():
    rng = np.random.default_rng(0)
    groups = [rng.normal(size=20).tolist() for _ in range(3)]
    report = anova_permutation(groups, n_perm=500, seed=1)
    assert report.p_value > 0.005


# --------------------------------------------------------------- regression

def test_exact_linear_data_recovers_the_slope():
    points = [(x, 2 * x) for x in range(12)]
    report = length_regression(points)
    assert abs(report.linear.coefficients[1] - 2.0) < 1e-9
    assert report.f_quadratic < 1e-6


def test_exact_quadratic_data_yields_perfect_quadratic_fit():
    points = [(x, x * x) for x in range(12)]
    report = length_regression(points)
    assert report.quadratic.r_squared == 1.0
    assert report.f_quadratic > 1e6 or math.isinf(report.f_quadratic)
    assert report.df == (1, 9)


def test_regression_needs_ten_points_and_varying_x():
    with pytest.raises(DataError):
        length_regression([(x, x) for x in range(9)])
    with pytest.raises(DataError):
        length_regression([(1.0, y) for y in range(12)])
