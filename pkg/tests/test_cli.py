"""End-to-end CLI tests via click's runner.

Every command is checked for its happy path, its file outputs, and at least
one failure mode (single-line stderr, exit code 1). Determinism claims are
tested by byte-comparing rerun outputs.
"""

import csv
import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from termscore.cli import main
from termscore.stats import load_stats, save_stats
from termscore.synth import generate_bursty_corpus
from termscore.stats import build_stats

CORPUS_LINES = [
    {"id": "doc1", "text": "apple apple pear ripen"},
    {"id": "doc2", "text": "pear poach"},
    {"id": "doc3", "text": "plum plum plum apple"},
]


@pytest.fixture(scope="module")
def runner():
    return CliRunner()


@pytest.fixture(scope="module")
def corpus_jsonl(tmp_path_factory):
    path = tmp_path_factory.mktemp("corpus") / "docs.jsonl"
    with open(path, "w", encoding="utf-8") as fh:
        for record in CORPUS_LINES:
            fh.write(json.dumps(record) + "\n")
    return path


@pytest.fixture(scope="module")
def stats_file(runner, corpus_jsonl, tmp_path_factory):
    out_dir = tmp_path_factory.mktemp("ingested")
    result = runner.invoke(main, [
        "ingest", "--input", str(corpus_jsonl), "--format", "jsonl",
        "--out", str(out_dir),
    ])
    assert result.exit_code == 0, result.output
    return out_dir / "stats.json"


@pytest.fixture(scope="module")
def bursty_stats_file(tmp_path_factory):
    corpus = generate_bursty_corpus(
        n_docs=40, background_vocab=150, doc_len_mean=40.0,
        n_bursty=15, bursty_doc_count=3, bursty_extra_mean=4.0, seed=5,
    )
    path = tmp_path_factory.mktemp("bursty") / "stats.json"
    save_stats(build_stats(corpus), path)
    return path


def read_csv(path):
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.reader(fh))


class TestIngest:
    def test_writes_snapshot_and_summary(self, runner, corpus_jsonl, tmp_path):
        result = runner.invoke(main, [
            "ingest", "--input", str(corpus_jsonl), "--format", "jsonl",
            "--out", str(tmp_path),
        ])
        assert result.exit_code == 0
        stats = load_stats(tmp_path / "stats.json")
        assert stats.n_docs == 3
        assert set(stats.terms) == {"apple", "pear", "ripen", "poach", "plum"}
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary == {"documents": 3, "vocabulary": 5, "tokens": 10}
        assert result.output.strip() == "documents=3 vocabulary=5 tokens=10"

    def test_txt_directory(self, runner, tmp_path):
        src = tmp_path / "texts"
        src.mkdir()
        (src / "a.txt").write_text("apple pear")
        (src / "b.txt").write_text("plum")
        out = tmp_path / "out"
        result = runner.invoke(main, [
            "ingest", "--input", str(src), "--format", "txt", "--out", str(out),
        ])
        assert result.exit_code == 0
        stats = load_stats(out / "stats.json")
        assert stats.doc_ids == ["a", "b"]

    def test_no_stopwords_flag(self, runner, tmp_path):
        src = tmp_path / "docs.jsonl"
        src.write_text('{"id": "d", "text": "the apple the"}\n')
        out = tmp_path / "out"
        result = runner.invoke(main, [
            "ingest", "--input", str(src), "--format", "jsonl",
            "--out", str(out), "--no-stopwords",
        ])
        assert result.exit_code == 0
        assert set(load_stats(out / "stats.json").terms) == {"the", "apple"}

    def test_stopwords_on_by_default(self, runner, tmp_path):
        src = tmp_path / "docs.jsonl"
        src.write_text('{"id": "d", "text": "the apple the"}\n')
        out = tmp_path / "out"
        runner.invoke(main, [
            "ingest", "--input", str(src), "--format", "jsonl", "--out", str(out),
        ])
        assert set(load_stats(out / "stats.json").terms) == {"apple"}

    def test_keep_numbers_flag(self, runner, tmp_path):
        src = tmp_path / "docs.jsonl"
        src.write_text('{"id": "d", "text": "3 cats"}\n')
        out = tmp_path / "out"
        runner.invoke(main, [
            "ingest", "--input", str(src), "--format", "jsonl",
            "--out", str(out), "--keep-numbers",
        ])
        assert set(load_stats(out / "stats.json").terms) == {"3", "cat"}

    def test_normalizer_none(self, runner, tmp_path):
        src = tmp_path / "docs.jsonl"
        src.write_text('{"id": "d", "text": "dogs dogs"}\n')
        out = tmp_path / "out"
        runner.invoke(main, [
            "ingest", "--input", str(src), "--format", "jsonl",
            "--out", str(out), "--normalizer", "none",
        ])
        assert set(load_stats(out / "stats.json").terms) == {"dogs"}

    def test_missing_input_fails_cleanly(self, runner, tmp_path):
        result = runner.invoke(main, [
            "ingest", "--input", str(tmp_path / "nope.jsonl"), "--format", "jsonl",
            "--out", str(tmp_path / "out"),
        ])
        assert result.exit_code == 1
        assert result.stderr.startswith("error:")
        assert result.stderr.count("\n") == 1

    def test_malformed_jsonl_fails_cleanly(self, runner, tmp_path):
        src = tmp_path / "docs.jsonl"
        src.write_text('{"id": "d", "text": "ok"}\nnot json\n')
        result = runner.invoke(main, [
            "ingest", "--input", str(src), "--format", "jsonl",
            "--out", str(tmp_path / "out"),
        ])
        assert result.exit_code == 1
        assert "error:" in result.stderr and "line 2" in result.stderr


class TestQuery:
    def test_table_and_csv(self, runner, stats_file, tmp_path):
        out = tmp_path / "hits.csv"
        result = runner.invoke(main, [
            "query", "--stats", str(stats_file), "--scorer", "tp",
            "--seed", "1", "--out", str(out), "apple",
        ])
        assert result.exit_code == 0
        lines = result.output.strip().splitlines()
        assert lines[0].split() == ["rank", "doc_id", "score"]
        assert lines[1].split()[:2] == ["1", "doc1"]  # 2/4 beats 1/4
        assert lines[2].split()[:2] == ["2", "doc3"]
        rows = read_csv(out)
        assert rows[0] == ["rank", "doc_id", "score"]
        assert [r[1] for r in rows[1:]] == ["doc1", "doc3", "doc2"]
        assert float(rows[1][2]) == 0.5

    def test_repeated_terms_weight_query(self, runner, stats_file):
        result = runner.invoke(main, [
            "query", "--stats", str(stats_file), "--scorer", "tp",
            "--seed", "1", "pear", "pear", "apple",
        ])
        assert result.exit_code == 0
        top = result.output.strip().splitlines()[1].split()
        # doc2: 2*(1/2) + 0 = 1.0 beats doc1: 2*(1/4) + 2/4 = 1.0? tie -> check both present
        assert top[0] == "1"

    def test_k_limits_output(self, runner, stats_file):
        result = runner.invoke(main, [
            "query", "--stats", str(stats_file), "--seed", "1", "--k", "2", "apple",
        ])
        assert len(result.output.strip().splitlines()) == 3  # header + 2 rows

    def test_unknown_term_exits_nonzero(self, runner, stats_file):
        result = runner.invoke(main, [
            "query", "--stats", str(stats_file), "--seed", "1", "zzz",
        ])
        assert result.exit_code == 1
        assert result.stderr.startswith("error: unknown query term: 'zzz'")

    def test_bad_k_rejected(self, runner, stats_file):
        result = runner.invoke(main, [
            "query", "--stats", str(stats_file), "--seed", "1", "--k", "0", "apple",
        ])
        assert result.exit_code == 1
        assert "--k must be >= 1" in result.stderr

    def test_rerun_is_byte_identical(self, runner, stats_file, tmp_path):
        outs = []
        for name in ("first.csv", "second.csv"):
            out = tmp_path / name
            result = runner.invoke(main, [
                "query", "--stats", str(stats_file), "--scorer", "random",
                "--seed", "7", "--out", str(out), "apple", "plum",
            ])
            assert result.exit_code == 0
            outs.append((out.read_bytes(), result.output))
        assert outs[0] == outs[1]


class TestSummarize:
    def test_table_and_csv(self, runner, stats_file, tmp_path):
        out = tmp_path / "summary.csv"
        result = runner.invoke(main, [
            "summarize", "--stats", str(stats_file), "--doc-id", "doc3",
            "--scorer", "tp", "--seed", "1", "--out", str(out),
        ])
        assert result.exit_code == 0
        lines = result.output.strip().splitlines()
        assert lines[0].split() == ["rank", "term", "score"]
        assert lines[1].split()[1] == "plum"  # 3/4 dominates
        rows = read_csv(out)
        assert rows[0] == ["rank", "term", "score"]
        assert rows[1][1] == "plum"

    def test_m_truncates(self, runner, stats_file):
        result = runner.invoke(main, [
            "summarize", "--stats", str(stats_file), "--doc-id", "doc1",
            "--scorer", "tp", "-m", "1", "--seed", "1",
        ])
        assert len(result.output.strip().splitlines()) == 2

    def test_pad_extends_short_documents(self, runner, stats_file):
        result = runner.invoke(main, [
            "summarize", "--stats", str(stats_file), "--doc-id", "doc2",
            "--scorer", "tp", "-m", "4", "--pad", "--seed", "1",
        ])
        assert result.exit_code == 0
        assert len(result.output.strip().splitlines()) == 5  # header + 4 terms

    def test_unknown_doc_exits_nonzero(self, runner, stats_file):
        result = runner.invoke(main, [
            "summarize", "--stats", str(stats_file), "--doc-id", "ghost", "--seed", "1",
        ])
        assert result.exit_code == 1
        assert result.stderr.startswith("error: unknown document id: 'ghost'")


class TestExperiment:
    def test_one_term_outputs(self, runner, bursty_stats_file, tmp_path):
        result = runner.invoke(main, [
            "experiment", "--stats", str(bursty_stats_file), "--which", "one_term",
            "--out", str(tmp_path), "--seed", "3", "--cutoffs", "2,4",
        ])
        assert result.exit_code == 0, result.output
        rows = read_csv(tmp_path / "results.csv")
        assert rows[0] == ["experiment", "parameter", "pair", "mean", "std", "count"]
        assert len(rows) == 1 + 2 * 3  # two cutoffs, three scorer pairs
        payload = json.loads((tmp_path / "results.json").read_text())
        assert payload["which"] == "one_term"
        assert payload["cutoffs"] == [2, 4]
        assert len(payload["rows"]) == 6
        assert "one_term" in result.output

    def test_two_term_outputs(self, runner, bursty_stats_file, tmp_path):
        result = runner.invoke(main, [
            "experiment", "--stats", str(bursty_stats_file), "--which", "two_term",
            "--out", str(tmp_path), "--seed", "3",
            "--pool-size", "12", "--num-common", "2", "--min-doc-freq", "2",
        ])
        assert result.exit_code == 0, result.output
        payload = json.loads((tmp_path / "results.json").read_text())
        assert payload["pool_size"] == 12
        assert payload["rows"], "expected at least one agreement row"
        counts = {row["count"] for row in payload["rows"]}
        assert counts and all(c > 0 for c in counts)

    def test_summarization_outputs_histograms(self, runner, bursty_stats_file, tmp_path):
        result = runner.invoke(main, [
            "experiment", "--stats", str(bursty_stats_file), "--which", "summarization",
            "--out", str(tmp_path), "--seed", "3",
        ])
        assert result.exit_code == 0, result.output
        payload = json.loads((tmp_path / "results.json").read_text())
        expected_pairs = ["fisher/tp_idf", "fisher/tp", "fisher/random"]
        assert [row["pair"] for row in payload["rows"]] == expected_pairs
        for pair in expected_pairs:
            hist = read_csv(tmp_path / f"histogram_{pair.replace('/', '_vs_')}.csv")
            assert hist[0] == ["score", "frequency"]
            total = sum(int(r[1]) for r in hist[1:])
            assert total == payload["n_docs"]

    def test_random_overlap_outputs(self, runner, bursty_stats_file, tmp_path):
        result = runner.invoke(main, [
            "experiment", "--stats", str(bursty_stats_file), "--which", "random_overlap",
            "--out", str(tmp_path), "--seed", "3", "--trials", "200",
        ])
        assert result.exit_code == 0, result.output
        payload = json.loads((tmp_path / "results.json").read_text())
        assert payload["expected_mean"] == pytest.approx(100.0 / 40)
        (row,) = payload["rows"]
        assert row["pair"] == "random/random"
        assert row["count"] == 200

    def test_threads_do_not_change_bytes(self, runner, bursty_stats_file, tmp_path):
        outputs = []
        for threads, name in ((1, "t1"), (4, "t4")):
            out = tmp_path / name
            result = runner.invoke(main, [
                "experiment", "--stats", str(bursty_stats_file), "--which", "summarization",
                "--out", str(out), "--seed", "11", "--threads", str(threads),
            ])
            assert result.exit_code == 0, result.output
            outputs.append({
                p.name: p.read_bytes() for p in sorted(out.iterdir())
            })
        assert outputs[0] == outputs[1]

    def test_rerun_is_byte_identical(self, runner, bursty_stats_file, tmp_path):
        blobs = []
        for name in ("a", "b"):
            out = tmp_path / name
            result = runner.invoke(main, [
                "experiment", "--stats", str(bursty_stats_file), "--which", "one_term",
                "--out", str(out), "--seed", "9", "--cutoffs", "2,3",
            ])
            assert result.exit_code == 0
            blobs.append((out / "results.csv").read_bytes() + (out / "results.json").read_bytes())
        assert blobs[0] == blobs[1]

    def test_bad_cutoffs_rejected(self, runner, bursty_stats_file, tmp_path):
        result = runner.invoke(main, [
            "experiment", "--stats", str(bursty_stats_file), "--which", "one_term",
            "--out", str(tmp_path), "--seed", "3", "--cutoffs", "ten,20",
        ])
        assert result.exit_code == 1
        assert "--cutoffs must be comma-separated integers" in result.stderr

    def test_bad_threads_rejected(self, runner, bursty_stats_file, tmp_path):
        result = runner.invoke(main, [
            "experiment", "--stats", str(bursty_stats_file), "--which", "one_term",
            "--out", str(tmp_path), "--seed", "3", "--threads", "0",
        ])
        assert result.exit_code == 1
        assert "--threads must be >= 1" in result.stderr

    def test_missing_stats_file(self, runner, tmp_path):
        result = runner.invoke(main, [
            "experiment", "--stats", str(tmp_path / "nope.json"), "--which", "one_term",
            "--out", str(tmp_path), "--seed", "3",
        ])
        assert result.exit_code == 1
        assert result.stderr.startswith("error:")


class TestSurrogate:
    def test_grid_tpidf(self, runner, tmp_path):
        out = tmp_path / "grid.csv"
        result = runner.invoke(main, [
            "surrogate", "--which", "grid_tpidf", "--out", str(out),
            "--resolution", "3", "--beta", "2.0",
        ])
        assert result.exit_code == 0
        rows = read_csv(out)
        assert rows[0] == ["p", "q", "value"]
        assert len(rows) == 1 + 9
        assert {r[0] for r in rows[1:]} == {"0.25", "0.5", "0.75"}
        assert "wrote 9 grid points" in result.output

    def test_grid_fisher_keeps_lower_triangle(self, runner, tmp_path):
        out = tmp_path / "grid.csv"
        runner.invoke(main, [
            "surrogate", "--which", "grid_fisher", "--out", str(out), "--resolution", "3",
        ])
        rows = read_csv(out)
        assert [(r[0], r[1]) for r in rows[1:]] == [
            ("0.5", "0.25"), ("0.75", "0.25"), ("0.75", "0.5"),
        ]

    def test_scaled_grid_responds_to_lam(self, runner, tmp_path):
        values = []
        for lam, name in (("1.0", "a.csv"), ("0.5", "b.csv")):
            out = tmp_path / name
            result = runner.invoke(main, [
                "surrogate", "--which", "grid_fisher_scaled", "--out", str(out),
                "--resolution", "3", "--lam", lam,
            ])
            assert result.exit_code == 0
            values.append([r[2] for r in read_csv(out)[1:]])
        assert values[0] != values[1]

    def test_regress_writes_fit(self, runner, bursty_stats_file, tmp_path):
        out = tmp_path / "fit.json"
        result = runner.invoke(main, [
            "surrogate", "--which", "regress", "--out", str(out),
            "--stats", str(bursty_stats_file), "--min-doc-freq", "2",
        ])
        assert result.exit_code == 0, result.output
        fit = json.loads(out.read_text())
        assert set(fit) == {"slope", "intercept", "r_squared", "n_points"}
        assert fit["n_points"] > 2
        assert 0.0 <= fit["r_squared"] <= 1.0
        assert result.output.startswith("slope=")

    def test_regress_requires_stats(self, runner, tmp_path):
        result = runner.invoke(main, [
            "surrogate", "--which", "regress", "--out", str(tmp_path / "fit.json"),
        ])
        assert result.exit_code == 1
        assert "surrogate regress requires --stats" in result.stderr

    def test_chvatal_sweep(self, runner, tmp_path):
        out = tmp_path / "sweep.json"
        result = runner.invoke(main, [
            "surrogate", "--which", "chvatal", "--out", str(out),
            "--max-population", "12",
        ])
        assert result.exit_code == 0
        sweep = json.loads(out.read_text())
        assert sweep["max_population"] == 12
        assert sweep["violations"] == 0
        assert sweep["tuples"] > 0
        assert sweep["min_gap"] >= -1e-12
        assert "violations=0" in result.output

    def test_dominance_default(self, runner, tmp_path):
        out = tmp_path / "dom.csv"
        result = runner.invoke(main, [
            "surrogate", "--which", "dominance", "--out", str(out),
        ])
        assert result.exit_code == 0, result.output
        rows = read_csv(out)
        assert rows[0] == ["eps", "log_inv_eps", "tpidf", "fisher",
                           "tpidf_ratio", "fisher_ratio", "tpidf_slope", "fisher_slope"]
        assert len(rows) == 1 + 7
        assert rows[1][6] == "" and rows[1][7] == ""  # no slope for the first point
        assert rows[2][6] != ""
        assert "final tpidf_slope=" in result.output

    def test_dominance_slopes_at_small_lam(self, runner, tmp_path):
        out = tmp_path / "dom.csv"
        result = runner.invoke(main, [
            "surrogate", "--which", "dominance", "--out", str(out),
            "--lam", "0.01", "--beta", "2.47", "--n-const", "100",
            "--eps", "1e-3,1e-4,1e-5,1e-6,1e-7,1e-8",
        ])
        assert result.exit_code == 0, result.output
        last = read_csv(out)[-1]
        assert float(last[6]) == pytest.approx(0.01 * 2.47, rel=0.02)
        assert float(last[7]) == pytest.approx(100 * 0.01, rel=0.02)

    def test_dominance_rejects_eps_outside_domain(self, runner, tmp_path):
        result = runner.invoke(main, [
            "surrogate", "--which", "dominance", "--out", str(tmp_path / "dom.csv"),
            "--lam", "0.01",
        ])
        assert result.exit_code == 1
        assert "outside the g domain" in result.stderr

    def test_bad_eps_rejected(self, runner, tmp_path):
        result = runner.invoke(main, [
            "surrogate", "--which", "dominance", "--out", str(tmp_path / "dom.csv"),
            "--eps", "big,small",
        ])
        assert result.exit_code == 1
        assert "--eps must be comma-separated floats" in result.stderr

    def test_rerun_is_byte_identical(self, runner, tmp_path):
        blobs = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            runner.invoke(main, [
                "surrogate", "--which", "grid_tpidf_scaled", "--out", str(out),
                "--resolution", "10", "--lam", "0.25", "--beta", "1.5",
            ])
            blobs.append(out.read_bytes())
        assert blobs[0] == blobs[1]
