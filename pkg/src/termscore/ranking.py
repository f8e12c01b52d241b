"""Rankings with seeded, input-order-independent tie-breaking.

Items sort by descending score; inside a tied score class the order is a
pseudo-random permutation keyed by (seed, item_id) alone, so the same seed
reproduces the same order no matter how the inputs were supplied, and two
rankings whose tie classes coincide come out identically ordered.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .randomness import stable_key, uniform01
from .scoring import (
    fisher_score,
    idf_score,
    tf_idf_score,
    tp_idf_score,
    tp_score,
    _check_kind,
)
from .stats import TermDocStats

__all__ = ["Ranking", "build_ranking", "top_k", "rank_documents", "summarize_document"]


@dataclass(frozen=True)
class Ranking:
    """Scored items in final display order, plus the seed that ordered them."""

    items: tuple[tuple[str, float], ...]
    seed: int

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(item_id for item_id, _ in self.items)


def build_ranking(scored: Iterable[tuple[str, float]], seed: int) -> Ranking:
    scored = list(scored)
    ids = [item_id for item_id, _ in scored]
    if len(set(ids)) != len(ids):
        raise ValueError("ranking items must have unique ids")
    scored.sort(key=lambda item: (-item[1], stable_key(seed, item[0]), item[0]))
    return Ranking(items=tuple(scored), seed=seed)


def top_k(ranking: Ranking, k: int) -> list[str]:
    """Ids of the first min(k, len) items."""
    if k < 1:
        raise ValueError(f"top_k requires k >= 1, got {k}")
    return [item_id for item_id, _ in ranking.items[:k]]


def _resolve_terms(stats: TermDocStats, terms: Sequence[str]) -> list[int]:
    tids = []
    for term in terms:
        tid = stats.vocab.get(term)
        if tid is None:
            raise KeyError(f"unknown query term: {term!r}")
        tids.append(tid)
    return tids


def rank_documents(
    stats: TermDocStats, kind: str, query_terms: Sequence[str], seed: int
) -> Ranking:
    """Rank every document by its summed per-term score for the query.

    Repeated query terms contribute once per repetition. Documents that
    score 0 on every query term still appear, ordered by the tie-break.
    """
    _check_kind(kind)
    tids = _resolve_terms(stats, query_terms)
    scores = [0.0] * stats.n_docs

    for tid in tids:
        if kind == "random":
            for j, doc_id in enumerate(stats.doc_ids):
                scores[j] += uniform01(seed, tid, doc_id)
            continue
        for j, count in stats.postings[tid].items():
            # stored entries have count >= 1, hence doc_len >= 1
            n = stats.doc_len[j]
            if kind == "tp":
                scores[j] += tp_score(count, n)
            elif kind == "idf":
                scores[j] += idf_score(stats.doc_freq[tid], stats.n_docs)
            elif kind == "tf_idf":
                scores[j] += tf_idf_score(count, stats.doc_freq[tid], stats.n_docs)
            elif kind == "tp_idf":
                scores[j] += tp_idf_score(count, n, stats.doc_freq[tid], stats.n_docs)
            else:
                scores[j] += fisher_score(count, n, stats.term_total[tid], stats.n_tokens)

    return build_ranking(zip(stats.doc_ids, scores), seed)


def summarize_document(
    stats: TermDocStats,
    kind: str,
    doc_id: str,
    m: int = 10,
    seed: int = 0,
    pad: bool = False,
) -> Ranking:
    """Rank the terms occurring in one document; the top m summarize it.

    Only terms actually present (count >= 1) are ranked. With ``pad`` a
    document holding fewer than m distinct terms is topped up to m with
    zero-score absent terms; pads always follow the present terms, in
    seeded-permutation order among themselves.
    """
    _check_kind(kind)
    if m < 1:
        raise ValueError(f"summarize_document requires m >= 1, got {m}")
    j = stats.doc_index.get(doc_id)
    if j is None:
        raise KeyError(f"unknown document id: {doc_id!r}")

    n = stats.doc_len[j]
    scored: list[tuple[str, float]] = []
    for tid, count in stats.doc_terms[j]:
        term = stats.terms[tid]
        if kind == "random":
            value = uniform01(seed, tid, doc_id)
        elif kind == "tp":
            value = tp_score(count, n)
        elif kind == "idf":
            value = idf_score(stats.doc_freq[tid], stats.n_docs)
        elif kind == "tf_idf":
            value = tf_idf_score(count, stats.doc_freq[tid], stats.n_docs)
        elif kind == "tp_idf":
            value = tp_idf_score(count, n, stats.doc_freq[tid], stats.n_docs)
        else:
            value = fisher_score(count, n, stats.term_total[tid], stats.n_tokens)
        scored.append((term, value))

    ranking = build_ranking(scored, seed)
    if not pad or len(ranking.items) >= m:
        return ranking

    present = {tid for tid, _ in stats.doc_terms[j]}
    absent = [t for tid, t in enumerate(stats.terms) if tid not in present]
    absent.sort(key=lambda term: (stable_key(seed, term), term))
    need = m - len(ranking.items)
    padded = ranking.items + tuple((term, 0.0) for term in absent[:need])
    return Ranking(items=padded, seed=seed)
