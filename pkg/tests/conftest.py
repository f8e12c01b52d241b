"""Shared fixtures and the acceptance-criteria reporting hook."""

import pytest

from termscore import Document, build_stats, generate_bursty_corpus

_criterion_lines = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion, then assert it."""

    def report(number, ok, detail):
        line = f"[criterion {number:02d}] {'PASS' if ok else 'FAIL'}: {detail}"
        print(line)
        _criterion_lines.append(line)
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def toy_docs():
    # d1 = [a, a, b], d2 = [b]: four tokens, two terms, hand-checkable
    return [
        Document(doc_id="d1", tokens=("a", "a", "b")),
        Document(doc_id="d2", tokens=("b",)),
    ]


@pytest.fixture
def toy_stats(toy_docs):
    return build_stats(toy_docs)


@pytest.fixture(scope="session")
def small_bursty_stats():
    """A 60-document planted-burst corpus, shared where exact counts don't matter."""
    docs = generate_bursty_corpus(
        n_docs=60,
        background_vocab=300,
        doc_len_mean=60.0,
        n_bursty=30,
        bursty_doc_count=4,
        bursty_extra_mean=6.0,
        seed=7,
    )
    return build_stats(docs)
