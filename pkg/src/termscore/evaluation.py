"""Retrieval-agreement metrics and the three experiment drivers.

Agreement between two scorers is measured as P@10: the size of the overlap
between their top-10 result sets for the same query. The drivers reproduce
the document-retrieval experiments (one-term and two-term queries) and the
summarization experiment, all seeded and reproducible: every query gets its
tie-break seed from (master seed, query index), shared by both sides of a
pair so that scorers with identical tie classes rank identically; the random
scorer additionally salts with the side index so a random-vs-random pair
compares two independent rankings instead of a ranking with itself.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

from .randomness import derive_seed
from .ranking import Ranking, rank_documents, summarize_document, top_k
from .scoring import SCORER_KINDS
from .stats import TermDocStats

__all__ = [
    "AgreementStat",
    "AgreementRow",
    "BurstyPools",
    "SummarizationResult",
    "p_at_10",
    "burstiness",
    "select_bursty_pools",
    "run_one_term_experiment",
    "run_two_term_experiment",
    "run_summarization_experiment",
    "random_overlap_baseline",
]

_T = TypeVar("_T")
_U = TypeVar("_U")


@dataclass(frozen=True)
class AgreementStat:
    mean: float
    std: float
    count: int

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "AgreementStat":
        # population std, so a single value reports 0 rather than NaN
        if not values:
            return cls(mean=0.0, std=0.0, count=0)
        arr = np.asarray(values, dtype=float)
        return cls(mean=float(arr.mean()), std=float(arr.std()), count=arr.size)


@dataclass(frozen=True)
class AgreementRow:
    experiment: str
    parameter: str
    pair: str
    stat: AgreementStat


@dataclass(frozen=True)
class BurstyPools:
    common: tuple[str, ...]
    rare: tuple[str, ...]


@dataclass(frozen=True)
class SummarizationResult:
    rows: list[AgreementRow]
    histograms: dict[str, list[int]]
    m: int
    n_docs: int
    short_docs: int  # documents with fewer than m distinct terms


def p_at_10(first: Ranking, second: Ranking, k: int = 10) -> int:
    """Overlap of the two top-k sets; both rankings must cover the same items."""
    if k < 1:
        raise ValueError(f"p_at_10 requires k >= 1, got {k}")
    if set(first.ids) != set(second.ids):
        raise ValueError("p_at_10 requires rankings over the same item set")
    if not first.items:
        return 0
    return len(set(top_k(first, k)) & set(top_k(second, k)))


def burstiness(stats: TermDocStats, term: str) -> float:
    """Mean in-document proportion of the term over the documents holding it."""
    tid = stats.vocab.get(term)
    if tid is None:
        raise KeyError(f"unknown term: {term!r}")
    posting = stats.postings[tid]
    return sum(k / stats.doc_len[j] for j, k in posting.items()) / len(posting)


def select_bursty_pools(
    stats: TermDocStats,
    pool_size: int = 106,
    num_common: int = 6,
    min_doc_freq: int = 10,
) -> BurstyPools:
    """Top-burstiness terms split into corpus-common and rare pools.

    Pool = the pool_size burstiest terms among those with doc_freq >=
    min_doc_freq (ties by term id); the num_common of them with the highest
    document share are 'common', the rest 'rare'.
    """
    if not 0 <= num_common < pool_size:
        raise ValueError(
            f"need 0 <= num_common < pool_size, got num_common={num_common}, pool_size={pool_size}"
        )
    eligible = [tid for tid in range(stats.n_terms) if stats.doc_freq[tid] >= min_doc_freq]
    if len(eligible) < pool_size:
        raise ValueError(
            f"need at least {pool_size} terms with doc_freq >= {min_doc_freq}, "
            f"corpus has {len(eligible)}"
        )
    by_burst = sorted(
        eligible, key=lambda tid: (-burstiness(stats, stats.terms[tid]), tid)
    )[:pool_size]
    by_share = sorted(by_burst, key=lambda tid: (-stats.doc_freq[tid], tid))
    common_ids = set(by_share[:num_common])
    common = tuple(stats.terms[tid] for tid in by_share[:num_common])
    rare = tuple(stats.terms[tid] for tid in by_burst if tid not in common_ids)
    return BurstyPools(common=common, rare=rare)


def _check_pairs(pairs: Sequence[tuple[str, str]]) -> None:
    for pair in pairs:
        for kind in pair:
            if kind not in SCORER_KINDS:
                raise ValueError(f"unknown scorer kind {kind!r} in pair {pair}")


def _side_seed(kind: str, query_seed: int, side: int) -> int:
    # deterministic scorers share the query seed (tie classes then order
    # identically); random draws must differ between the two sides
    if kind == "random":
        return derive_seed(query_seed, "side", side)
    return query_seed


def _map_ordered(
    func: Callable[[_T], _U], items: Sequence[_T], threads: int
) -> list[_U]:
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(func, items))
    return [func(item) for item in items]


def _pair_label(pair: tuple[str, str]) -> str:
    return f"{pair[0]}/{pair[1]}"


def run_one_term_experiment(
    stats: TermDocStats,
    cutoffs: Sequence[int] = (10, 100, 1000),
    pairs: Sequence[tuple[str, str]] = (("fisher", "tp_idf"), ("fisher", "random"), ("tp", "tp_idf")),
    seed: int = 0,
    k: int = 10,
    threads: int = 1,
) -> list[AgreementRow]:
    """P@10 agreement over all one-term queries, per doc-frequency cutoff.

    Every term with doc_freq >= cutoff becomes a query; each pair of scorers
    ranks all documents for it and the top-k overlap is recorded.
    """
    _check_pairs(pairs)
    rows: list[AgreementRow] = []
    for cutoff in cutoffs:
        query_tids = [tid for tid in range(stats.n_terms) if stats.doc_freq[tid] >= cutoff]

        def one_query(item: tuple[int, int]) -> list[int]:
            qi, tid = item
            qseed = derive_seed(seed, "one_term", cutoff, qi)
            term = stats.terms[tid]
            values = []
            for pair in pairs:
                first = rank_documents(stats, pair[0], [term], _side_seed(pair[0], qseed, 0))
                second = rank_documents(stats, pair[1], [term], _side_seed(pair[1], qseed, 1))
                values.append(p_at_10(first, second, k))
            return values

        per_query = _map_ordered(one_query, list(enumerate(query_tids)), threads)
        for idx, pair in enumerate(pairs):
            stat = AgreementStat.from_values([v[idx] for v in per_query])
            rows.append(
                AgreementRow("one_term", str(cutoff), _pair_label(pair), stat)
            )
    return rows


def run_two_term_experiment(
    stats: TermDocStats,
    pools: BurstyPools | None = None,
    pairs: Sequence[tuple[str, str]] = (
        ("random", "random"),
        ("fisher", "tp"),
        ("fisher", "tp_idf"),
        ("tp_idf", "tp"),
    ),
    seed: int = 0,
    k: int = 10,
    threads: int = 1,
    pool_size: int = 106,
    num_common: int = 6,
    min_doc_freq: int = 10,
) -> list[AgreementRow]:
    """Two-term queries: each common bursty term paired with every rare one.

    One result row per (common term, scorer pair); the stat aggregates over
    the rare pool.
    """
    _check_pairs(pairs)
    if pools is None:
        pools = select_bursty_pools(stats, pool_size, num_common, min_doc_freq)
    rows: list[AgreementRow] = []
    for ci, common in enumerate(pools.common):

        def one_query(item: tuple[int, str]) -> list[int]:
            ri, rare = item
            qseed = derive_seed(seed, "two_term", ci, ri)
            query = [common, rare]
            values = []
            for pair in pairs:
                first = rank_documents(stats, pair[0], query, _side_seed(pair[0], qseed, 0))
                second = rank_documents(stats, pair[1], query, _side_seed(pair[1], qseed, 1))
                values.append(p_at_10(first, second, k))
            return values

        per_query = _map_ordered(one_query, list(enumerate(pools.rare)), threads)
        for idx, pair in enumerate(pairs):
            stat = AgreementStat.from_values([v[idx] for v in per_query])
            rows.append(AgreementRow("two_term", common, _pair_label(pair), stat))
    return rows


def run_summarization_experiment(
    stats: TermDocStats,
    alternatives: Sequence[str] = ("tp_idf", "tp", "random"),
    m: int = 10,
    seed: int = 0,
    threads: int = 1,
) -> SummarizationResult:
    """Agreement between fisher top-m document summaries and alternatives.

    Every document is summarized (top m of its own terms) by fisher and by
    each alternative scorer; P@m overlaps are aggregated and histogrammed.
    Documents with fewer than m distinct terms compare whatever is there.
    """
    _check_pairs([("fisher", alt) for alt in alternatives])
    if m < 1:
        raise ValueError(f"run_summarization_experiment requires m >= 1, got {m}")

    def one_doc(item: tuple[int, str]) -> list[int]:
        j, doc_id = item
        qseed = derive_seed(seed, "summarization", j)
        base = summarize_document(stats, "fisher", doc_id, m=m, seed=_side_seed("fisher", qseed, 0))
        values = []
        for alt in alternatives:
            other = summarize_document(stats, alt, doc_id, m=m, seed=_side_seed(alt, qseed, 1))
            values.append(p_at_10(base, other, m))
        return values

    per_doc = _map_ordered(one_doc, list(enumerate(stats.doc_ids)), threads)
    rows: list[AgreementRow] = []
    histograms: dict[str, list[int]] = {}
    for idx, alt in enumerate(alternatives):
        values = [v[idx] for v in per_doc]
        label = _pair_label(("fisher", alt))
        rows.append(AgreementRow("summarization", str(m), label, AgreementStat.from_values(values)))
        counts = [0] * (m + 1)
        for v in values:
            counts[v] += 1
        histograms[label] = counts
    short_docs = sum(1 for entry in stats.doc_terms if len(entry) < m)
    return SummarizationResult(
        rows=rows, histograms=histograms, m=m, n_docs=stats.n_docs, short_docs=short_docs
    )


def random_overlap_baseline(
    n_items: int, trials: int = 1000, k: int = 10, seed: int = 0
) -> AgreementStat:
    """Top-k overlap of two independent uniform rankings of n_items.

    The exact expectation is k*k/n_items (100/N for k=10): each of the k
    items in one top list has probability k/n_items of appearing in the
    other.
    """
    if k < 1 or n_items < k:
        raise ValueError(f"need n_items >= k >= 1, got n_items={n_items}, k={k}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    values = []
    for trial in range(trials):
        rng = np.random.default_rng(derive_seed(seed, "overlap", trial))
        first = rng.permutation(n_items)[:k]
        second = rng.permutation(n_items)[:k]
        values.append(len(set(first.tolist()) & set(second.tolist())))
    return AgreementStat.from_values(values)
