"""Command-line interface: outputs, manifests, and exit codes."""

import json

import pytest
from click.testing import CliRunner

from partlex.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def _generate(runner, tmp_path, subdomain="cities", n=12, seed=7):
    out = tmp_path / "corpus.jsonl"
    result = runner.invoke(
        main,
        ["generate", "--subdomain", subdomain, "--n", str(n), "--seed", str(seed),
         "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    return out


def test_generate_writes_n_lines_and_a_manifest(runner, tmp_path):
    out = _generate(runner, tmp_path, n=15)
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 15
    manifest = json.loads((tmp_path / "corpus.jsonl.manifest.json").read_text())
    assert manifest["command"] == "generate"
    assert manifest["seed"] == 7
    assert manifest["out"] == "corpus.jsonl"  # colocated paths stay relative


def test_generate_with_svgs(runner, tmp_path):
    out = tmp_path / "corpus.jsonl"
    svg_dir = tmp_path / "svgs"
    result = runner.invoke(
        main,
        ["generate", "--subdomain", "nuts_bolts", "--n", "3", "--seed", "1",
         "--out", str(out), "--svg-dir", str(svg_dir)],
    )
    assert result.exit_code == 0, result.output
    svgs = sorted(svg_dir.glob("*.svg"))
    assert len(svgs) == 3
    for record, path in zip(out.read_text().splitlines(), svgs):
        assert json.loads(record)  # stimulus ids name the files
    assert all(p.read_text().startswith("<?xml") for p in svgs)


def test_missing_required_option_is_a_usage_error(runner, tmp_path):
    result = runner.invoke(main, ["generate", "--subdomain", "cities", "--out", str(tmp_path / "c.jsonl")])
    assert result.exit_code == 2


def test_unknown_subdomain_is_a_usage_error(runner, tmp_path):
    result = runner.invoke(
        main,
        ["generate", "--subdomain", "nope", "--seed", "1", "--out", str(tmp_path / "c.jsonl")],
    )
    assert result.exit_code == 2


def test_missing_input_file_is_a_data_error(runner, tmp_path):
    result = runner.invoke(
        main, ["cost", "--corpus", str(tmp_path / "absent.jsonl"), "--out", str(tmp_path / "cost.csv")]
    )
    assert result.exit_code == 3
    assert result.output.startswith("error: data:") or "error: data:" in result.output


def test_rewrite_emits_programs_and_tokens(runner, tmp_path):
    corpus = _generate(runner, tmp_path, n=6)
    out = tmp_path / "rewritten.jsonl"
    result = runner.invoke(
        main, ["rewrite", "--corpus", str(corpus), "--level", "2", "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    records = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(records) == 6
    for record in records:
        assert record["level"] == 2
        assert isinstance(record["tokens"], list) and record["tokens"]
        assert record["program"].startswith("(")


def test_cost_report_has_a_row_per_level(runner, tmp_path):
    corpus = _generate(runner, tmp_path, n=8)
    out = tmp_path / "cost.csv"
    result = runner.invoke(main, ["cost", "--corpus", str(corpus), "--out", str(out)])
    assert result.exit_code == 0, result.output
    rows = out.read_text().strip().splitlines()
    assert rows[0].startswith("subdomain,level,")
    assert len(rows) == 1 + 4  # header + one row per level


def test_stats_anova_runs_on_a_generated_corpus(runner, tmp_path):
    corpus = _generate(runner, tmp_path, n=10)
    out = tmp_path / "anova.csv"
    result = runner.invoke(
        main,
        ["stats", "anova", "--corpus", str(corpus), "--n-perm", "100", "--seed", "0",
         "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    header, row = out.read_text().strip().splitlines()
    assert header == "subdomain,f_statistic,p_value,n_perm"
    assert row.startswith("cities,")


def test_synth_align_round_trip(runner, tmp_path):
    corpus = _generate(runner, tmp_path, n=10)
    descs = tmp_path / "descs.jsonl"
    result = runner.invoke(
        main,
        ["synth", "--corpus", str(corpus), "--level", "1", "--noise", "0.1",
         "--synonyms", "2", "--seed", "3", "--out", str(descs)],
    )
    assert result.exit_code == 0, result.output
    out = tmp_path / "align.csv"
    result = runner.invoke(
        main,
        ["align", "--corpus", str(corpus), "--descriptions", str(descs),
         "--levels", "0,1", "--batch", "5", "--seed", "3", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    rows = out.read_text().strip().splitlines()
    assert len(rows) == 1 + 2
    for row in rows[1:]:
        _, _, n_folds, score = row.split(",")
        assert n_folds == "2"
        assert float(score) <= 0.0


def test_pipeline_config_rejects_unknown_keys(runner, tmp_path):
    config = tmp_path / "config.json"
    config.write_text('{"not_a_setting": 1}\n')
    result = runner.invoke(
        main,
        ["pipeline", "--subdomain", "cities", "--seed", "1",
         "--out", str(tmp_path / "run"), "--config", str(config)],
    )
    assert result.exit_code == 3


def test_pipeline_failure_leaves_no_partial_outputs(runner, tmp_path):
    # A single subdomain cannot support the between-subdomain statistics,
    # so the pipeline fails partway through and must clean up after itself.
    config = tmp_path / "config.json"
    config.write_text('{"n": 3, "n_perm": 100}\n')
    run_dir = tmp_path / "run"
    result = runner.invoke(
        main,
        ["pipeline", "--subdomain", "cities", "--seed", "1",
         "--out", str(run_dir), "--config", str(config)],
    )
    assert result.exit_code == 3
    assert list(run_dir.iterdir()) == []
