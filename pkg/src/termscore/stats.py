"""Term-document count statistics and their snapshot format.

``build_stats`` reduces a tokenized corpus to the sparse counts and marginals
every scorer needs: per-pair counts, document lengths, document frequencies,
and total term frequencies. Term ids are assigned by first appearance across
the corpus, document order follows the input.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .corpus import Document

__all__ = ["TermDocStats", "build_stats", "lookup", "save_stats", "load_stats"]

SNAPSHOT_MAGIC = "termscore.stats"
SNAPSHOT_VERSION = 1


@dataclass
class TermDocStats:
    doc_ids: list[str]
    terms: list[str]  # term_id -> term, global first-appearance order
    doc_len: list[int]
    # doc index -> [(term_id, count), ...] ordered by first appearance in the doc
    doc_terms: list[list[tuple[int, int]]]
    # term_id -> {doc index: count}, entries only where count >= 1
    postings: list[dict[int, int]]
    doc_freq: list[int]
    term_total: list[int]
    vocab: dict[str, int]
    doc_index: dict[str, int]
    n_tokens: int

    @property
    def n_docs(self) -> int:
        return len(self.doc_ids)

    @property
    def n_terms(self) -> int:
        return len(self.terms)


def build_stats(docs: Iterable[Document]) -> TermDocStats:
    doc_ids: list[str] = []
    doc_index: dict[str, int] = {}
    terms: list[str] = []
    vocab: dict[str, int] = {}
    doc_len: list[int] = []
    doc_terms: list[list[tuple[int, int]]] = []
    postings: list[dict[int, int]] = []

    for doc in docs:
        if doc.doc_id in doc_index:
            raise ValueError(f"duplicate document id {doc.doc_id!r}")
        j = len(doc_ids)
        doc_index[doc.doc_id] = j
        doc_ids.append(doc.doc_id)
        doc_len.append(len(doc.tokens))

        counts: dict[str, int] = {}
        for token in doc.tokens:
            counts[token] = counts.get(token, 0) + 1
        entry: list[tuple[int, int]] = []
        for token, k in counts.items():
            tid = vocab.get(token)
            if tid is None:
                tid = len(terms)
                vocab[token] = tid
                terms.append(token)
                postings.append({})
            postings[tid][j] = k
            entry.append((tid, k))
        doc_terms.append(entry)

    return _assemble(doc_ids, terms, doc_len, doc_terms, postings, vocab, doc_index)


def _assemble(
    doc_ids: list[str],
    terms: list[str],
    doc_len: list[int],
    doc_terms: list[list[tuple[int, int]]],
    postings: list[dict[int, int]],
    vocab: dict[str, int],
    doc_index: dict[str, int],
) -> TermDocStats:
    return TermDocStats(
        doc_ids=doc_ids,
        terms=terms,
        doc_len=doc_len,
        doc_terms=doc_terms,
        postings=postings,
        doc_freq=[len(p) for p in postings],
        term_total=[sum(p.values()) for p in postings],
        vocab=vocab,
        doc_index=doc_index,
        n_tokens=sum(doc_len),
    )


def lookup(stats: TermDocStats, term: str, doc_id: str) -> tuple[int, int, int, int]:
    """(count in doc, doc length, doc frequency, total term frequency)."""
    tid = stats.vocab.get(term)
    if tid is None:
        raise KeyError(f"unknown term: {term!r}")
    j = stats.doc_index.get(doc_id)
    if j is None:
        raise KeyError(f"unknown document id: {doc_id!r}")
    count = stats.postings[tid].get(j, 0)
    return count, stats.doc_len[j], stats.doc_freq[tid], stats.term_total[tid]


def save_stats(stats: TermDocStats, path: str | Path) -> None:
    """Write a lossless JSON snapshot (doc ids, vocabulary, per-doc counts)."""
    payload = {
        "magic": SNAPSHOT_MAGIC,
        "version": SNAPSHOT_VERSION,
        "doc_ids": stats.doc_ids,
        "terms": stats.terms,
        "doc_terms": [[[tid, k] for tid, k in entry] for entry in stats.doc_terms],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, separators=(",", ":"))


def load_stats(path: str | Path) -> TermDocStats:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if not isinstance(payload, dict) or payload.get("magic") != SNAPSHOT_MAGIC:
        raise ValueError(f"{path}: not a termscore stats snapshot")
    if payload.get("version") != SNAPSHOT_VERSION:
        raise ValueError(
            f"{path}: unsupported snapshot version {payload.get('version')!r}"
        )

    doc_ids = list(payload["doc_ids"])
    terms = list(payload["terms"])
    vocab = {t: i for i, t in enumerate(terms)}
    doc_index = {d: j for j, d in enumerate(doc_ids)}
    if len(vocab) != len(terms):
        raise ValueError(f"{path}: snapshot vocabulary contains duplicates")
    if len(doc_index) != len(doc_ids):
        raise ValueError(f"{path}: snapshot document ids contain duplicates")

    doc_terms: list[list[tuple[int, int]]] = []
    postings: list[dict[int, int]] = [{} for _ in terms]
    doc_len = []
    for j, entry in enumerate(payload["doc_terms"]):
        row: list[tuple[int, int]] = []
        total = 0
        for tid, k in entry:
            if not 0 <= tid < len(terms) or k < 1:
                raise ValueError(f"{path}: snapshot document {j} has an invalid count entry")
            row.append((int(tid), int(k)))
            postings[tid][j] = int(k)
            total += int(k)
        doc_terms.append(row)
        doc_len.append(total)

    if any(not p for p in postings):
        raise ValueError(f"{path}: snapshot lists terms that occur in no document")
    return _assemble(doc_ids, terms, doc_len, doc_terms, postings, vocab, doc_index)
