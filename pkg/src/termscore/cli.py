"""Command-line interface.

Subcommands: ingest, query, summarize, experiment, surrogate. Every
randomized step takes its randomness from the --seed flag alone, so reruns
with the same inputs and seed produce byte-identical files; --threads only
bounds parallelism and never changes results. Human tables print floats with
6 decimals, CSV/JSON files keep full precision. Errors exit nonzero with a
single-line diagnostic on stderr.
"""
from __future__ import annotations

import csv
import functools
import json
import math
import sys
from pathlib import Path

import click

from .corpus import NORMALIZERS, PipelineConfig, load_stopwords, preprocess_corpus
from .corpus import ingest_jsonl, ingest_nysk_xml, ingest_txt_dir
from .evaluation import (
    AgreementRow,
    random_overlap_baseline,
    run_one_term_experiment,
    run_summarization_experiment,
    run_two_term_experiment,
)
from .ranking import rank_documents, summarize_document
from .scoring import SCORER_KINDS
from .stats import build_stats, load_stats, save_stats
from .surrogate import (
    GRID_FUNCTIONS,
    SurrogateParams,
    chvatal_sweep,
    contour_grid,
    dominance_profile,
    fit_idf_linearity,
)

_EXPERIMENTS = ("one_term", "two_term", "summarization", "random_overlap")
_SURROGATE_MODES = tuple(f"grid_{name}" for name in GRID_FUNCTIONS) + (
    "regress",
    "chvatal",
    "dominance",
)


def _fail_cleanly(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (ValueError, KeyError, OSError) as exc:
            message = exc.args[0] if exc.args else str(exc)
            click.echo(f"error: {message}", err=True)
            sys.exit(1)

    return wrapper


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _write_json(path: Path, payload) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _agreement_csv_rows(rows: list[AgreementRow]):
    for row in rows:
        yield [row.experiment, row.parameter, row.pair, row.stat.mean, row.stat.std, row.stat.count]


def _agreement_json_rows(rows: list[AgreementRow]):
    return [
        {
            "experiment": row.experiment,
            "parameter": row.parameter,
            "pair": row.pair,
            "mean": row.stat.mean,
            "std": row.stat.std,
            "count": row.stat.count,
        }
        for row in rows
    ]


def _echo_agreement_table(rows: list[AgreementRow]) -> None:
    click.echo(f"{'experiment':<14} {'parameter':<16} {'pair':<20} {'mean':>10} {'std':>10} {'count':>7}")
    for row in rows:
        click.echo(
            f"{row.experiment:<14} {row.parameter:<16} {row.pair:<20} "
            f"{row.stat.mean:>10.6f} {row.stat.std:>10.6f} {row.stat.count:>7d}"
        )


@click.group()
def main() -> None:
    """Term scoring and retrieval-agreement toolkit."""


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(path_type=Path))
@click.option("--format", "fmt", required=True, type=click.Choice(["jsonl", "txt", "nysk"]))
@click.option("--out", "out_dir", required=True, type=click.Path(path_type=Path))
@click.option("--stopwords", "stopword_file", type=click.Path(path_type=Path), default=None,
              help="Stopword file; packaged English list by default.")
@click.option("--no-stopwords", is_flag=True, help="Disable stopword removal.")
@click.option("--keep-non-ascii", is_flag=True, help="Keep tokens containing non-ASCII characters.")
@click.option("--keep-numbers", is_flag=True, help="Do not spell out integer tokens.")
@click.option("--normalizer", type=click.Choice(NORMALIZERS), default="simple_suffix", show_default=True)
@_fail_cleanly
def ingest(input_path, fmt, out_dir, stopword_file, no_stopwords, keep_non_ascii,
           keep_numbers, normalizer) -> None:
    """Read a corpus, preprocess it, and write a statistics snapshot."""
    if fmt == "jsonl":
        raws = ingest_jsonl(input_path)
    elif fmt == "txt":
        raws = ingest_txt_dir(input_path)
    else:
        raws = ingest_nysk_xml(input_path)

    kwargs = {
        "strip_non_ascii": not keep_non_ascii,
        "number_to_words": not keep_numbers,
        "normalizer": normalizer,
    }
    if no_stopwords:
        kwargs["stopwords"] = frozenset()
    elif stopword_file is not None:
        kwargs["stopwords"] = load_stopwords(stopword_file)
    config = PipelineConfig(**kwargs)

    stats = build_stats(preprocess_corpus(raws, config))
    out_dir.mkdir(parents=True, exist_ok=True)
    save_stats(stats, out_dir / "stats.json")
    summary = {
        "documents": stats.n_docs,
        "vocabulary": stats.n_terms,
        "tokens": stats.n_tokens,
    }
    _write_json(out_dir / "summary.json", summary)
    click.echo(
        f"documents={stats.n_docs} vocabulary={stats.n_terms} tokens={stats.n_tokens}"
    )


@main.command()
@click.option("--stats", "stats_path", required=True, type=click.Path(path_type=Path))
@click.option("--scorer", type=click.Choice(SCORER_KINDS), default="tp_idf", show_default=True)
@click.option("--k", default=10, show_default=True, help="How many documents to report.")
@click.option("--seed", required=True, type=int, help="Tie-break / random-scorer seed.")
@click.option("--out", "out_file", type=click.Path(path_type=Path), default=None,
              help="Also write the reported rows as CSV.")
@click.argument("terms", nargs=-1, required=True)
@_fail_cleanly
def query(stats_path, scorer, k, seed, out_file, terms) -> None:
    """Rank documents for a query (repeat a term to weight it)."""
    if k < 1:
        raise ValueError(f"--k must be >= 1, got {k}")
    stats = load_stats(stats_path)
    ranking = rank_documents(stats, scorer, list(terms), seed)
    shown = ranking.items[:k]
    click.echo(f"{'rank':>5} {'doc_id':<24} {'score':>14}")
    for rank, (doc_id, value) in enumerate(shown, start=1):
        click.echo(f"{rank:>5} {doc_id:<24} {value:>14.6f}")
    if out_file is not None:
        _write_csv(
            out_file,
            ["rank", "doc_id", "score"],
            ([rank, doc_id, value] for rank, (doc_id, value) in enumerate(shown, start=1)),
        )


@main.command()
@click.option("--stats", "stats_path", required=True, type=click.Path(path_type=Path))
@click.option("--doc-id", required=True)
@click.option("--scorer", type=click.Choice(SCORER_KINDS), default="fisher", show_default=True)
@click.option("-m", "--top", "m", default=10, show_default=True, help="Summary length.")
@click.option("--pad", is_flag=True, help="Pad short documents with zero-score absent terms.")
@click.option("--seed", required=True, type=int)
@click.option("--out", "out_file", type=click.Path(path_type=Path), default=None)
@_fail_cleanly
def summarize(stats_path, doc_id, scorer, m, pad, seed, out_file) -> None:
    """Report the top-scoring terms of one document."""
    stats = load_stats(stats_path)
    ranking = summarize_document(stats, scorer, doc_id, m=m, seed=seed, pad=pad)
    shown = ranking.items[:m]
    click.echo(f"{'rank':>5} {'term':<24} {'score':>14}")
    for rank, (term, value) in enumerate(shown, start=1):
        click.echo(f"{rank:>5} {term:<24} {value:>14.6f}")
    if out_file is not None:
        _write_csv(
            out_file,
            ["rank", "term", "score"],
            ([rank, term, value] for rank, (term, value) in enumerate(shown, start=1)),
        )


@main.command()
@click.option("--stats", "stats_path", required=True, type=click.Path(path_type=Path))
@click.option("--which", required=True, type=click.Choice(_EXPERIMENTS))
@click.option("--out", "out_dir", required=True, type=click.Path(path_type=Path))
@click.option("--seed", required=True, type=int)
@click.option("--threads", default=1, show_default=True,
              help="Parallelism bound; results do not depend on it.")
@click.option("--cutoffs", default="10,100,1000", show_default=True,
              help="Doc-frequency cutoffs for one_term.")
@click.option("--pool-size", default=106, show_default=True, help="Bursty pool size for two_term.")
@click.option("--num-common", default=6, show_default=True, help="Common terms in the pool.")
@click.option("--min-doc-freq", default=10, show_default=True, help="Pool eligibility threshold.")
@click.option("-m", "--top", "m", default=10, show_default=True, help="Summary length for summarization.")
@click.option("--trials", default=1000, show_default=True, help="Trials for random_overlap.")
@_fail_cleanly
def experiment(stats_path, which, out_dir, seed, threads, cutoffs, pool_size,
               num_common, min_doc_freq, m, trials) -> None:
    """Run an agreement experiment and write results.csv / results.json."""
    if threads < 1:
        raise ValueError(f"--threads must be >= 1, got {threads}")
    stats = load_stats(stats_path)
    payload: dict = {"which": which, "seed": seed}
    histograms = None

    if which == "one_term":
        try:
            cutoff_values = [int(c) for c in cutoffs.split(",") if c.strip()]
        except ValueError:
            raise ValueError(f"--cutoffs must be comma-separated integers, got {cutoffs!r}")
        rows = run_one_term_experiment(stats, cutoff_values, seed=seed, threads=threads)
        payload["cutoffs"] = cutoff_values
    elif which == "two_term":
        rows = run_two_term_experiment(
            stats, seed=seed, threads=threads, pool_size=pool_size,
            num_common=num_common, min_doc_freq=min_doc_freq,
        )
        payload["pool_size"] = pool_size
        payload["num_common"] = num_common
        payload["min_doc_freq"] = min_doc_freq
    elif which == "summarization":
        result = run_summarization_experiment(stats, m=m, seed=seed, threads=threads)
        rows = result.rows
        histograms = result.histograms
        payload["m"] = result.m
        payload["n_docs"] = result.n_docs
        payload["short_docs"] = result.short_docs
        payload["histograms"] = histograms
    else:
        stat = random_overlap_baseline(stats.n_docs, trials=trials, seed=seed)
        rows = [AgreementRow("random_overlap", str(trials), "random/random", stat)]
        payload["n_docs"] = stats.n_docs
        payload["expected_mean"] = 100.0 / stats.n_docs

    payload["rows"] = _agreement_json_rows(rows)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_csv(
        out_dir / "results.csv",
        ["experiment", "parameter", "pair", "mean", "std", "count"],
        _agreement_csv_rows(rows),
    )
    _write_json(out_dir / "results.json", payload)
    if histograms is not None:
        for pair, counts in histograms.items():
            name = f"histogram_{pair.replace('/', '_vs_')}.csv"
            _write_csv(out_dir / name, ["score", "frequency"], list(enumerate(counts)))
    _echo_agreement_table(rows)


@main.command()
@click.option("--which", required=True, type=click.Choice(_SURROGATE_MODES))
@click.option("--out", "out_file", required=True, type=click.Path(path_type=Path))
@click.option("--stats", "stats_path", type=click.Path(path_type=Path), default=None,
              help="Statistics snapshot (required for regress).")
@click.option("--resolution", default=50, show_default=True)
@click.option("--beta", default=1.0, show_default=True)
@click.option("--alpha", default=1.0, show_default=True)
@click.option("--lam", default=1.0, show_default=True)
@click.option("--n-const", default=1.0, show_default=True)
@click.option("--theta", default=math.pi / 4, show_default=True)
@click.option("--eps", default="1e-2,1e-3,1e-4,1e-5,1e-6,1e-7,1e-8", show_default=True,
              help="Decreasing eps values for dominance.")
@click.option("--min-doc-freq", default=1, show_default=True, help="Regression point filter.")
@click.option("--max-population", default=30, show_default=True, help="Chvatal sweep bound.")
@_fail_cleanly
def surrogate(which, out_file, stats_path, resolution, beta, alpha, lam, n_const,
              theta, eps, min_doc_freq, max_population) -> None:
    """Evaluate the continuous surrogates: grids, regression, bound sweep."""
    params = SurrogateParams(beta=beta, alpha=alpha, lam=lam, n_const=n_const)

    if which.startswith("grid_"):
        rows = contour_grid(which[len("grid_"):], params, resolution)
        _write_csv(out_file, ["p", "q", "value"], rows)
        click.echo(f"wrote {len(rows)} grid points to {out_file}")
    elif which == "regress":
        if stats_path is None:
            raise ValueError("surrogate regress requires --stats")
        fit = fit_idf_linearity(load_stats(stats_path), min_doc_freq=min_doc_freq)
        _write_json(out_file, {
            "slope": fit.slope,
            "intercept": fit.intercept,
            "r_squared": fit.r_squared,
            "n_points": fit.n_points,
        })
        click.echo(
            f"slope={fit.slope:.6f} intercept={fit.intercept:.6f} "
            f"r_squared={fit.r_squared:.6f} n_points={fit.n_points}"
        )
    elif which == "chvatal":
        sweep = chvatal_sweep(max_population)
        _write_json(out_file, {
            "max_population": max_population,
            "tuples": sweep.tuples,
            "violations": sweep.violations,
            "min_gap": sweep.min_gap,
            "max_gap": sweep.max_gap,
            "mean_gap": sweep.mean_gap,
        })
        click.echo(
            f"tuples={sweep.tuples} violations={sweep.violations} "
            f"min_gap={sweep.min_gap:.6f} max_gap={sweep.max_gap:.6f}"
        )
    else:
        try:
            eps_values = [float(e) for e in eps.split(",") if e.strip()]
        except ValueError:
            raise ValueError(f"--eps must be comma-separated floats, got {eps!r}")
        rows = dominance_profile(eps_values, theta, params)
        header = ["eps", "log_inv_eps", "tpidf", "fisher", "tpidf_ratio",
                  "fisher_ratio", "tpidf_slope", "fisher_slope"]
        _write_csv(
            out_file,
            header,
            ([row.get(col, "") for col in header] for row in rows),
        )
        last = rows[-1]
        click.echo(
            f"final tpidf_slope={last['tpidf_slope']:.6f} (lam*beta={params.lam * params.beta:.6f}) "
            f"fisher_slope={last['fisher_slope']:.6f} (n*lam={params.n_const * params.lam:.6f})"
        )


if __name__ == "__main__":
    main()
