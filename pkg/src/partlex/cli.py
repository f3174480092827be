"""Command-line interface tying the pipeline together.

Every command echoes its resolved configuration next to its output (a
``*.manifest.json`` file, or ``manifest.json`` inside an output
directory), writes files atomically, and is byte-reproducible given the
same inputs and seed. Exit codes: 0 success, 2 usage error, 3 data
error, 4 internal oracle violation.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import os
import sys

import click

from .alignment import cross_validate, synth_descriptions
from .descriptions import read_descriptions, write_descriptions
from .drawing import eval_drawing, render_drawing_svg
from .errors import DataError, EvalError, OracleError, ParseError, PartlexError
from .library import combined_cost, rewrite
from .sexpr import print_sexpr, program_length, tokenize
from .stimgen import (
    LEVELS,
    SUBDOMAINS,
    atomic_write_text,
    generate_stimuli,
    read_corpus,
    write_corpus,
)
from .textstats import (
    anova_permutation,
    jsd_pairwise,
    length_regression,
    normalize_description,
    permutation_test_jsd,
    pmi_table,
    WordDistribution,
)
from .towers import eval_tower, render_tower_svg

JSD_NOTE = "JSD = sqrt of base-2 Jensen-Shannon divergence"
PMI_NOTE = "PMI in natural log"


def _fail(kind: str, exc: BaseException, code: int):
    message = str(exc).replace("\n", " ")
    click.echo(f"error: {kind}: {message}", err=True)
    sys.exit(code)


def _cli_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (DataError, ParseError, EvalError, FileNotFoundError) as exc:
            _fail("data", exc, 3)
        except (OracleError, AssertionError) as exc:
            _fail("oracle", exc, 4)

    return wrapper


def _write_manifest(out_path: str, config: dict):
    if os.path.isdir(out_path):
        target = os.path.join(out_path, "manifest.json")
        base = os.path.abspath(out_path)
    else:
        target = out_path + ".manifest.json"
        base = os.path.dirname(os.path.abspath(out_path))

    def relativize(value):
        # Paths colocated with the manifest are stored relative to it, so
        # identical runs into different directories stay byte-identical.
        if isinstance(value, str):
            absolute = os.path.abspath(value)
            if os.path.dirname(absolute) == base:
                return os.path.basename(absolute)
            if absolute == base:
                return "."
        return value

    config = {k: relativize(v) for k, v in config.items()}
    atomic_write_text(target, json.dumps(config, sort_keys=True) + "\n")


def _write_csv(path: str, header, rows, note: str = ""):
    buf = io.StringIO()
    if note:
        buf.write(f"# {note}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    atomic_write_text(path, buf.getvalue())


def _resolve_subdomains(subdomain, all_subdomains):
    if all_subdomains:
        return list(SUBDOMAINS)
    if not subdomain:
        raise click.UsageError("pass --subdomain (repeatable) or --all-subdomains")
    for name in subdomain:
        if name not in SUBDOMAINS:
            raise click.UsageError(f"unknown subdomain {name!r}")
    return list(subdomain)


def _parse_levels(levels: str):
    try:
        out = tuple(int(x) for x in levels.split(","))
    except ValueError:
        raise click.UsageError(f"bad --levels value {levels!r}")
    if not out or any(lv not in LEVELS for lv in out):
        raise click.UsageError("--levels entries must be in 0..3")
    return out


def _by_subdomain(stimuli):
    groups = {}
    for s in stimuli:
        groups.setdefault(s.subdomain, []).append(s)
    return groups


def _descriptions_for(stimuli, descriptions):
    ids = {s.id for s in stimuli}
    return [d for d in descriptions if d.stimulus_id in ids]


@click.group()
def main():
    """Graphics-program stimulus generation, libraries, and statistics."""


# ------------------------------------------------------------------ generate

@main.command()
@click.option("--subdomain", multiple=True, help="Subdomain name (repeatable).")
@click.option("--all-subdomains", is_flag=True, help="All eight subdomains.")
@click.option("--n", default=250, show_default=True)
@click.option("--seed", required=True, type=int)
@click.option("--out", required=True, type=click.Path())
@click.option("--svg-dir", type=click.Path(), default=None, help="Also render SVGs here.")
@_cli_errors
def generate(subdomain, all_subdomains, n, seed, out, svg_dir):
    """Generate a stimulus corpus as JSON Lines."""
    names = _resolve_subdomains(subdomain, all_subdomains)
    stimuli = []
    for name in names:
        stimuli.extend(generate_stimuli(name, n=n, seed=seed))
    write_corpus(stimuli, out)
    if svg_dir:
        _render_stimuli(stimuli, svg_dir)
    _write_manifest(out, {
        "command": "generate", "subdomains": names, "n": n, "seed": seed,
        "out": out, "svg_dir": svg_dir,
    })
    click.echo(f"wrote {len(stimuli)} stimuli to {out}")


def _render_stimuli(stimuli, out_dir):
    os.makedirs(out_dir, exist_ok=True)
    for s in stimuli:
        if s.domain == "drawings":
            svg = render_drawing_svg(eval_drawing(s.programs[0]))
        else:
            svg = render_tower_svg(eval_tower(s.programs[0]))
        atomic_write_text(os.path.join(out_dir, f"{s.id}.svg"), svg)


@main.command()
@click.option("--corpus", required=True, type=click.Path())
@click.option("--out-dir", required=True, type=click.Path())
@_cli_errors
def render(corpus, out_dir):
    """Render every stimulus in a corpus file to SVG."""
    stimuli = read_corpus(corpus)
    _render_stimuli(stimuli, out_dir)
    _write_manifest(out_dir, {"command": "render", "corpus": corpus, "out_dir": out_dir})
    click.echo(f"rendered {len(stimuli)} SVGs to {out_dir}")


# ------------------------------------------------------------------- rewrite

@main.command("rewrite")
@click.option("--corpus", required=True, type=click.Path())
@click.option("--level", required=True, type=click.IntRange(0, 3))
@click.option("--out", required=True, type=click.Path())
@_cli_errors
def rewrite_cmd(corpus, level, out):
    """Rewrite base programs into a level's library; write programs + tokens."""
    stimuli = read_corpus(corpus)
    lines = []
    for s in stimuli:
        library = SUBDOMAINS[s.subdomain].library(level)
        program = rewrite(s.programs[0], library)
        lines.append(json.dumps({
            "id": s.id,
            "subdomain": s.subdomain,
            "level": level,
            "program": print_sexpr(program),
            "tokens": tokenize(program),
        }, sort_keys=True))
    atomic_write_text(out, "\n".join(lines) + "\n")
    _write_manifest(out, {"command": "rewrite", "corpus": corpus, "level": level, "out": out})
    click.echo(f"rewrote {len(stimuli)} programs at level {level}")


# ---------------------------------------------------------------------- cost

@main.command()
@click.option("--corpus", required=True, type=click.Path())
@click.option("--out", required=True, type=click.Path())
@_cli_errors
def cost(corpus, out):
    """Combined cost C_L = |L| + mean |pi_L| per subdomain and level."""
    stimuli = read_corpus(corpus)
    rows = []
    for name, group in _by_subdomain(stimuli).items():
        for level in LEVELS:
            report = combined_cost(SUBDOMAINS[name].library(level), (s.programs[0] for s in group))
            rows.append((report.subdomain, report.level, report.library_size,
                         report.mean_program_length, report.combined_cost, report.n_programs))
    _write_csv(out, ["subdomain", "level", "library_size", "mean_program_length",
                     "combined_cost", "n_programs"], rows)
    _write_manifest(out, {"command": "cost", "corpus": corpus, "out": out})
    click.echo(f"wrote cost report for {len(rows)} (subdomain, level) cells")


# --------------------------------------------------------------------- synth

@main.command()
@click.option("--corpus", required=True, type=click.Path())
@click.option("--level", required=True, type=click.IntRange(0, 3))
@click.option("--noise", default=0.0, show_default=True)
@click.option("--synonyms", default=1, show_default=True)
@click.option("--seed", required=True, type=int)
@click.option("--out", required=True, type=click.Path())
@_cli_errors
def synth(corpus, level, noise, synonyms, seed, out):
    """Emit one synthetic description per stimulus at a library level."""
    stimuli = read_corpus(corpus)
    descriptions = []
    for name, group in _by_subdomain(stimuli).items():
        library = SUBDOMAINS[name].library(level)
        descriptions.extend(
            synth_descriptions(group, library, noise=noise, synonyms=synonyms, seed=seed)
        )
    write_descriptions(descriptions, out)
    _write_manifest(out, {
        "command": "synth", "corpus": corpus, "level": level, "noise": noise,
        "synonyms": synonyms, "seed": seed, "out": out,
    })
    click.echo(f"wrote {len(descriptions)} descriptions at level {level}")


# --------------------------------------------------------------------- align

@main.command()
@click.option("--corpus", required=True, type=click.Path())
@click.option("--descriptions", "descriptions_path", required=True, type=click.Path())
@click.option("--levels", default="0,1,2,3", show_default=True)
@click.option("--batch", default=5, show_default=True)
@click.option("--seed", required=True, type=int)
@click.option("--max-iter", default=50, show_default=True)
@click.option("--tol", default=1e-6, show_default=True)
@click.option("--normalize/--no-normalize", default=False, show_default=True,
              help="Apply the text normalizer to what-phrases.")
@click.option("--out", required=True, type=click.Path())
@_cli_errors
def align(corpus, descriptions_path, levels, batch, seed, max_iter, tol, normalize, out):
    """Cross-validated alignment score per subdomain and level."""
    stimuli = read_corpus(corpus)
    descriptions = read_descriptions(descriptions_path)
    level_list = _parse_levels(levels)
    normalizer = normalize_description if normalize else None
    rows = []
    for name, group in _by_subdomain(stimuli).items():
        described = _descriptions_for(group, descriptions)
        for level in level_list:
            report = cross_validate(
                group, described, SUBDOMAINS[name].library(level),
                batch=batch, seed=seed, max_iter=max_iter, tol=tol,
                normalizer=normalizer,
            )
            rows.append((report.subdomain, report.level, len(report.folds), report.overall))
    _write_csv(out, ["subdomain", "level", "n_folds", "mean_word_loglik"], rows)
    _write_manifest(out, {
        "command": "align", "corpus": corpus, "descriptions": descriptions_path,
        "levels": list(level_list), "batch": batch, "seed": seed,
        "max_iter": max_iter, "tol": tol, "normalize": normalize, "out": out,
    })
    click.echo(f"wrote alignment report for {len(rows)} (subdomain, level) cells")


# --------------------------------------------------------------------- stats

@main.group()
def stats():
    """Corpus statistics reports (CSV)."""


def _load_described_words(corpus, descriptions_path, normalize):
    stimuli = read_corpus(corpus)
    descriptions = read_descriptions(descriptions_path)
    subdomain_of = {s.id: s.subdomain for s in stimuli}
    domain_of = {s.subdomain: s.domain for s in stimuli}
    normalizer = normalize_description if normalize else None
    trials = []
    for d in descriptions:
        if d.stimulus_id not in subdomain_of:
            raise DataError(f"description references unknown stimulus {d.stimulus_id!r}")
        words = d.what_words(normalizer)
        if words:
            trials.append((subdomain_of[d.stimulus_id], words))
    return stimuli, descriptions, trials, domain_of


@stats.command()
@click.option("--corpus", required=True, type=click.Path())
@click.option("--descriptions", "descriptions_path", required=True, type=click.Path())
@click.option("--min-count", default=5, show_default=True)
@click.option("--normalize/--no-normalize", default=True, show_default=True)
@click.option("--out", required=True, type=click.Path())
@_cli_errors
def pmi(corpus, descriptions_path, min_count, normalize, out):
    """Word-subdomain PMI table."""
    _, _, trials, _ = _load_described_words(corpus, descriptions_path, normalize)
    groups = {}
    for label, words in trials:
        groups.setdefault(label, []).extend(words)
    table = pmi_table(groups)
    rows = []
    for word in sorted(table.counts):
        for label in table.labels:
            count = table.counts[word].get(label, 0)
            if count > 0:
                rows.append((word, label, count, table.pmi(word, label)))
    _write_csv(out, ["word", "subdomain", "count", "pmi"], rows,
               note=f"{PMI_NOTE}; top-k display threshold: count >= {min_count}")
    _write_manifest(out, {
        "command": "stats pmi", "corpus": corpus, "descriptions": descriptions_path,
        "min_count": min_count, "normalize": normalize, "out": out,
    })
    click.echo(f"wrote PMI table with {len(rows)} entries")


@stats.command()
@click.option("--corpus", required=True, type=click.Path())
@click.option("--descriptions", "descriptions_path", required=True, type=click.Path())
@click.option("--n-perm", default=1000, show_default=True)
@click.option("--seed", required=True, type=int)
@click.option("--normalize/--no-normalize", default=True, show_default=True)
@click.option("--out", required=True, type=click.Path())
@_cli_errors
def jsd(corpus, descriptions_path, n_perm, seed, normalize, out):
    """Mean pairwise JSD between subdomains per domain, with permutation p."""
    _, _, trials, domain_of = _load_described_words(corpus, descriptions_path, normalize)
    rows = []
    for domain in sorted(set(domain_of.values())):
        domain_trials = [t for t in trials if domain_of[t[0]] == domain]
        if len({label for label, _ in domain_trials}) < 2:
            continue
        report = permutation_test_jsd(domain_trials, n_perm=n_perm, seed=seed)
        rows.append((domain, report.statistic, report.p_value, report.n_perm,
                     report.null_mean, report.null_sd))
    if not rows:
        raise DataError("no domain has descriptions from >= 2 subdomains")
    _write_csv(out, ["domain", "jsd", "p_value", "n_perm", "null_mean", "null_sd"],
               rows, note=JSD_NOTE)
    _write_manifest(out, {
        "command": "stats jsd", "corpus": corpus, "descriptions": descriptions_path,
        "n_perm": n_perm, "seed": seed, "normalize": normalize, "out": out,
    })
    click.echo(f"wrote JSD report for {len(rows)} domains")


@stats.command()
@click.option("--corpus", required=True, type=click.Path())
@click.option("--n-perm", default=1000, show_default=True)
@click.option("--seed", required=True, type=int)
@click.option("--out", required=True, type=click.Path())
@_cli_errors
def anova(corpus, n_perm, seed, out):
    """Permutation ANOVA of per-stimulus program length across levels."""
    stimuli = read_corpus(corpus)
    rows = []
    for name, group in _by_subdomain(stimuli).items():
        groups = [[program_length(s.programs[level]) for s in group] for level in LEVELS]
        report = anova_permutation(groups, n_perm=n_perm, seed=seed)
        rows.append((name, report.statistic, report.p_value, report.n_perm))
    _write_csv(out, ["subdomain", "f_statistic", "p_value", "n_perm"], rows)
    _write_manifest(out, {
        "command": "stats anova", "corpus": corpus, "n_perm": n_perm,
        "seed": seed, "out": out,
    })
    click.echo(f"wrote ANOVA report for {len(rows)} subdomains")


@stats.command()
@click.option("--corpus", required=True, type=click.Path())
@click.option("--descriptions", "descriptions_path", required=True, type=click.Path())
@click.option("--normalize/--no-normalize", default=True, show_default=True)
@click.option("--out", required=True, type=click.Path())
@_cli_errors
def regress(corpus, descriptions_path, normalize, out):
    """OLS of what-word count on base program length, linear vs quadratic."""
    stimuli, descriptions, _, _ = _load_described_words(corpus, descriptions_path, normalize)
    by_id = {s.id: s for s in stimuli}
    normalizer = normalize_description if normalize else None
    points = {}
    for d in descriptions:
        s = by_id[d.stimulus_id]
        point = (program_length(s.programs[0]), len(d.what_words(normalizer)))
        points.setdefault(s.domain, []).append(point)
        points.setdefault("all", []).append(point)
    rows = []
    for scope in sorted(points):
        report = length_regression(points[scope])
        lin, quad = report.linear, report.quadratic
        rows.append((scope, report.n,
                     lin.coefficients[0], lin.coefficients[1], lin.r_squared,
                     quad.coefficients[0], quad.coefficients[1], quad.coefficients[2],
                     quad.r_squared, report.f_quadratic, report.df[1]))
    _write_csv(out, ["scope", "n", "lin_a", "lin_b", "lin_r2",
                     "quad_a", "quad_b", "quad_c", "quad_r2", "f_quadratic", "df2"], rows)
    _write_manifest(out, {
        "command": "stats regress", "corpus": corpus,
        "descriptions": descriptions_path, "normalize": normalize, "out": out,
    })
    click.echo(f"wrote regression report for {len(rows)} scopes")


# ------------------------------------------------------------------ pipeline

PIPELINE_DEFAULTS = {
    "n": 250,
    "synth_level": 1,
    "noise": 0.2,
    "synonyms": 2,
    "batch": 5,
    "max_iter": 50,
    "tol": 1e-6,
    "n_perm": 1000,
    "min_count": 5,
}


@main.command()
@click.option("--subdomain", multiple=True)
@click.option("--all-subdomains", is_flag=True)
@click.option("--seed", required=True, type=int)
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="JSON file overriding pipeline defaults.")
@_cli_errors
def pipeline(subdomain, all_subdomains, seed, out_dir, config_path):
    """generate -> cost -> synth -> align -> stats, under one manifest."""
    names = _resolve_subdomains(subdomain, all_subdomains)
    cfg = dict(PIPELINE_DEFAULTS)
    if config_path:
        try:
            with open(config_path, encoding="utf-8") as fh:
                overrides = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DataError(f"{config_path}: invalid JSON ({exc})")
        unknown = set(overrides) - set(cfg)
        if unknown:
            raise DataError(f"unknown pipeline config keys: {sorted(unknown)}")
        cfg.update(overrides)
    os.makedirs(out_dir, exist_ok=True)
    created = []

    def path(name):
        p = os.path.join(out_dir, name)
        created.append(p)
        return p

    try:
        ctx = click.get_current_context()
        ctx.invoke(generate, subdomain=tuple(names), all_subdomains=False,
                   n=cfg["n"], seed=seed, out=path("corpus.jsonl"), svg_dir=None)
        corpus_path = os.path.join(out_dir, "corpus.jsonl")
        ctx.invoke(cost, corpus=corpus_path, out=path("cost.csv"))
        ctx.invoke(synth, corpus=corpus_path, level=cfg["synth_level"],
                   noise=cfg["noise"], synonyms=cfg["synonyms"], seed=seed,
                   out=path("descriptions.jsonl"))
        descriptions_path = os.path.join(out_dir, "descriptions.jsonl")
        ctx.invoke(align, corpus=corpus_path, descriptions_path=descriptions_path,
                   levels="0,1,2,3", batch=cfg["batch"], seed=seed,
                   max_iter=cfg["max_iter"], tol=cfg["tol"], normalize=False,
                   out=path("align.csv"))
        ctx.invoke(pmi, corpus=corpus_path, descriptions_path=descriptions_path,
                   min_count=cfg["min_count"], normalize=False, out=path("pmi.csv"))
        ctx.invoke(jsd, corpus=corpus_path, descriptions_path=descriptions_path,
                   n_perm=cfg["n_perm"], seed=seed, normalize=False, out=path("jsd.csv"))
        ctx.invoke(anova, corpus=corpus_path, n_perm=cfg["n_perm"], seed=seed,
                   out=path("anova.csv"))
        ctx.invoke(regress, corpus=corpus_path, descriptions_path=descriptions_path,
                   normalize=False, out=path("regress.csv"))
    except BaseException:
        for p in created:
            for victim in (p, p + ".manifest.json"):
                if os.path.exists(victim):
                    os.unlink(victim)
        raise
    _write_manifest(out_dir, {
        "command": "pipeline", "subdomains": names, "seed": seed,
        "out": out_dir, **cfg,
    })
    click.echo(f"pipeline complete in {out_dir}")


if __name__ == "__main__":
    main()
