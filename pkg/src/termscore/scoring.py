"""Term-document scoring functions.

Five deterministic scorers plus a seeded random baseline:

* ``tp``     term proportion count/doc_len (0 for empty documents)
* ``idf``    ln(n_docs / doc_freq)
* ``tf_idf`` count * idf
* ``tp_idf`` proportion * idf
* ``fisher`` -ln of the one-sided hypergeometric tail: the probability of
  drawing the term at least ``count`` times in ``doc_len`` draws without
  replacement from the corpus token population
* ``random`` uniform [0,1) keyed by (seed, term_id, doc_id) only

``hypergeom_tail`` follows the numerically stable scheme: leading probability
mass via log-gamma binomial coefficients, successive terms via the exact
ratio recurrence, accumulated in linear space when the leading term is
representable and as a streaming log-sum-exp otherwise. Natural logarithms
throughout.
"""
from __future__ import annotations

import math
import operator
from dataclasses import dataclass

from scipy.sparse import csr_matrix

from .randomness import uniform01
from .stats import TermDocStats, lookup

__all__ = [
    "SCORER_KINDS",
    "TailResult",
    "hypergeom_tail",
    "fisher_score",
    "tp_score",
    "idf_score",
    "tf_idf_score",
    "tp_idf_score",
    "score",
    "score_matrix",
]

SCORER_KINDS = ("tp", "idf", "tf_idf", "tp_idf", "fisher", "random")

# exp() underflows to subnormals near -708; below this the tail is summed in
# log space instead of linear space
_LOG_FLOOR = -700.0
# once the geometric bound on the unsummed remainder falls below this
# (relative to the running sum) further terms cannot move the result
_REL_TAIL_EPS = 1e-17


@dataclass(frozen=True)
class TailResult:
    """Upper-tail probability in log and linear form.

    ``terms_summed`` is the number of probability-mass terms accumulated;
    0 means the tail covered the whole support and was returned as exactly 1
    without summing.
    """

    log_p: float
    p: float
    terms_summed: int


def _as_int(name: str, value: object) -> int:
    try:
        return operator.index(value)
    except TypeError:
        raise TypeError(f"{name} must be an integer, got {value!r}") from None


def _log_comb(a: int, b: int) -> float:
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


def _check_tail_args(k: int, n: int, successes: int, population: int) -> None:
    if k < 0:
        raise ValueError(f"hypergeom_tail requires k >= 0, got k={k}")
    if k > n:
        raise ValueError(f"hypergeom_tail requires k <= n, got k={k}, n={n}")
    if n > population:
        raise ValueError(
            f"hypergeom_tail requires n <= population, got n={n}, population={population}"
        )
    if successes < 0:
        raise ValueError(f"hypergeom_tail requires successes >= 0, got successes={successes}")
    if successes > population:
        raise ValueError(
            "hypergeom_tail requires successes <= population, "
            f"got successes={successes}, population={population}"
        )
    if k > successes:
        raise ValueError(
            f"hypergeom_tail requires k <= successes, got k={k}, successes={successes}"
        )


def hypergeom_tail(k: int, n: int, successes: int, population: int) -> TailResult:
    """P(X >= k) for X hypergeometric(population, successes, n draws).

    Exactly 1 when k is at or below the support minimum (in particular when
    k = 0). Tail terms beyond the point where they can no longer affect the
    sum at double precision are dropped.
    """
    k = _as_int("k", k)
    n = _as_int("n", n)
    successes = _as_int("successes", successes)
    population = _as_int("population", population)
    _check_tail_args(k, n, successes, population)

    support_min = max(0, n + successes - population)
    if k <= support_min:
        return TailResult(log_p=0.0, p=1.0, terms_summed=0)

    upper = min(n, successes)
    log_lead = (
        _log_comb(successes, k)
        + _log_comb(population - successes, n - k)
        - _log_comb(population, n)
    )

    if log_lead > _LOG_FLOOR:
        term = math.exp(log_lead)
        total = term
        count = 1
        for x in range(k, upper):
            ratio = ((successes - x) * (n - x)) / ((x + 1) * (population - successes - n + x + 1))
            term *= ratio
            total += term
            count += 1
            if ratio < 1.0 and term * ratio < total * _REL_TAIL_EPS * (1.0 - ratio):
                break
        log_p = min(math.log(total), 0.0)
        return TailResult(log_p=log_p, p=math.exp(log_p), terms_summed=count)

    cur = log_lead
    acc = log_lead
    count = 1
    for x in range(k, upper):
        ratio = ((successes - x) * (n - x)) / ((x + 1) * (population - successes - n + x + 1))
        cur += math.log(ratio)
        if cur > acc:
            acc, cur_rel = cur, acc - cur
        else:
            cur_rel = cur - acc
        acc += math.log1p(math.exp(cur_rel))
        count += 1
        if ratio < 1.0 and cur + math.log(ratio / (1.0 - ratio)) < acc + math.log(_REL_TAIL_EPS):
            break
    log_p = min(acc, 0.0)
    return TailResult(log_p=log_p, p=math.exp(log_p), terms_summed=count)


def fisher_score(k: int, n: int, successes: int, population: int) -> float:
    """-ln of the hypergeometric upper tail; 0 when k = 0, grows with enrichment."""
    return -hypergeom_tail(k, n, successes, population).log_p


def tp_score(count: int, doc_len: int) -> float:
    """Term proportion count/doc_len; 0 for an empty document by convention."""
    count = _as_int("count", count)
    doc_len = _as_int("doc_len", doc_len)
    if count < 0:
        raise ValueError(f"tp_score requires count >= 0, got count={count}")
    if count > doc_len:
        raise ValueError(f"tp_score requires count <= doc_len, got count={count}, doc_len={doc_len}")
    if doc_len == 0:
        return 0.0
    return count / doc_len


def idf_score(doc_freq: int, n_docs: int) -> float:
    doc_freq = _as_int("doc_freq", doc_freq)
    n_docs = _as_int("n_docs", n_docs)
    if doc_freq < 1:
        raise ValueError(f"idf_score requires doc_freq >= 1, got doc_freq={doc_freq}")
    if doc_freq > n_docs:
        raise ValueError(
            f"idf_score requires doc_freq <= n_docs, got doc_freq={doc_freq}, n_docs={n_docs}"
        )
    return math.log(n_docs / doc_freq)


def tf_idf_score(count: int, doc_freq: int, n_docs: int) -> float:
    count = _as_int("count", count)
    if count < 0:
        raise ValueError(f"tf_idf_score requires count >= 0, got count={count}")
    return count * idf_score(doc_freq, n_docs)


def tp_idf_score(count: int, doc_len: int, doc_freq: int, n_docs: int) -> float:
    return tp_score(count, doc_len) * idf_score(doc_freq, n_docs)


def _check_kind(kind: str) -> None:
    if kind not in SCORER_KINDS:
        raise ValueError(f"unknown scorer kind {kind!r}; expected one of {SCORER_KINDS}")


def score(
    stats: TermDocStats,
    kind: str,
    term: str,
    doc_id: str,
    seed: int | None = None,
) -> float:
    """Score one term against one document under the chosen scorer.

    Pairs where the term does not occur in the document score 0.0 under every
    deterministic kind; ``random`` ignores the counts entirely and requires a
    seed.
    """
    _check_kind(kind)
    count, doc_len, doc_freq, term_total = lookup(stats, term, doc_id)
    if kind == "random":
        if seed is None:
            raise ValueError("scorer kind 'random' requires a seed")
        return uniform01(seed, stats.vocab[term], doc_id)
    if count == 0 or doc_len == 0:
        return 0.0
    if kind == "tp":
        return tp_score(count, doc_len)
    if kind == "idf":
        return idf_score(doc_freq, stats.n_docs)
    if kind == "tf_idf":
        return tf_idf_score(count, doc_freq, stats.n_docs)
    if kind == "tp_idf":
        return tp_idf_score(count, doc_len, doc_freq, stats.n_docs)
    return fisher_score(count, doc_len, term_total, stats.n_tokens)


def score_matrix(stats: TermDocStats, kind: str, seed: int | None = None) -> csr_matrix:
    """Sparse (n_docs x n_terms) score matrix over the stored count entries.

    Only pairs with count >= 1 are materialized; under ``random`` the absent
    pairs would each have their own draw, available through ``score``.
    """
    _check_kind(kind)
    if kind == "random" and seed is None:
        raise ValueError("scorer kind 'random' requires a seed")

    n_docs = stats.n_docs
    log = math.log
    data: list[float] = []
    indices: list[int] = []
    indptr = [0]
    if kind in ("idf", "tf_idf", "tp_idf"):
        idf = [log(n_docs / K) if K else 0.0 for K in stats.doc_freq]

    for j in range(n_docs):
        n = stats.doc_len[j]
        doc_id = stats.doc_ids[j]
        for tid, k in stats.doc_terms[j]:
            indices.append(tid)
            if kind == "tp":
                data.append(k / n)
            elif kind == "idf":
                data.append(idf[tid])
            elif kind == "tf_idf":
                data.append(k * idf[tid])
            elif kind == "tp_idf":
                data.append((k / n) * idf[tid])
            elif kind == "fisher":
                data.append(-hypergeom_tail(k, n, stats.term_total[tid], stats.n_tokens).log_p)
            else:
                data.append(uniform01(seed, tid, doc_id))
        indptr.append(len(indices))

    return csr_matrix(
        (data, indices, indptr), shape=(n_docs, stats.n_terms), dtype=float
    )
