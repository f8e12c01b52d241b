"""sklearn-style estimator facade over the scoring core.

``TermScoreVectorizer`` plays the role TfidfVectorizer plays for plain
tf-idf: ``fit`` learns the corpus statistics (vocabulary, document lengths,
frequencies), ``transform`` emits a sparse documents-by-terms matrix of
scores against that fitted background. It composes with sklearn pipelines
and honors get_params/clone semantics.
"""
from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .corpus import Document, PipelineConfig, RawDocument, preprocess
from .randomness import uniform01
from .scoring import SCORER_KINDS, fisher_score, idf_score, tp_score
from .stats import build_stats

__all__ = ["TermScoreVectorizer"]


class TermScoreVectorizer(TransformerMixin, BaseEstimator):
    """Convert documents to sparse term-score matrices.

    Parameters
    ----------
    scorer : one of 'tp', 'idf', 'tf_idf', 'tp_idf', 'fisher', 'random'.
    pipeline : PipelineConfig applied to raw-string inputs, or None for the
        package default. Pre-tokenized inputs (sequences of tokens) skip it.
    seed : drives the 'random' scorer; ignored by the deterministic kinds.

    Attributes set by fit
    ---------------------
    stats_ : the fitted TermDocStats.
    vocabulary_ : term -> column index.
    """

    def __init__(
        self,
        scorer: str = "tp_idf",
        pipeline: PipelineConfig | None = None,
        seed: int = 0,
    ):
        self.scorer = scorer
        self.pipeline = pipeline
        self.seed = seed

    def _tokenize(self, raw_documents) -> list[Document]:
        if isinstance(raw_documents, str):
            raise TypeError("expected an iterable of documents, got a single string")
        config = self.pipeline if self.pipeline is not None else PipelineConfig()
        docs: list[Document] = []
        for i, item in enumerate(raw_documents):
            if isinstance(item, str):
                docs.append(preprocess(RawDocument(doc_id=str(i), text=item), config))
            elif isinstance(item, (list, tuple)) and all(isinstance(t, str) for t in item):
                docs.append(Document(doc_id=str(i), tokens=tuple(item)))
            else:
                raise TypeError(
                    f"document {i} must be a string or a sequence of tokens, got {type(item).__name__}"
                )
        return docs

    def fit(self, raw_documents, y=None):
        if self.scorer not in SCORER_KINDS:
            raise ValueError(
                f"unknown scorer {self.scorer!r}; expected one of {SCORER_KINDS}"
            )
        stats = build_stats(self._tokenize(raw_documents))
        self.stats_ = stats
        self.vocabulary_ = dict(stats.vocab)
        return self

    def transform(self, raw_documents) -> csr_matrix:
        """Score documents against the fitted background.

        Tokens outside the fitted vocabulary contribute to document length
        but produce no columns. Under 'fisher' a document may not be longer
        than the fitted token population, nor hold a term more often than
        the whole fitted corpus does.
        """
        check_is_fitted(self, "stats_")
        stats = self.stats_
        kind = self.scorer
        idf_cache: dict[int, float] = {}

        data: list[float] = []
        indices: list[int] = []
        indptr = [0]
        for i, doc in enumerate(self._tokenize(raw_documents)):
            n = len(doc.tokens)
            counts: dict[int, int] = {}
            for token in doc.tokens:
                tid = stats.vocab.get(token)
                if tid is not None:
                    counts[tid] = counts.get(tid, 0) + 1
            for tid, k in counts.items():
                indices.append(tid)
                data.append(self._entry(kind, k, n, tid, doc.doc_id, idf_cache))
            indptr.append(len(indices))

        return csr_matrix(
            (data, indices, indptr),
            shape=(len(indptr) - 1, stats.n_terms),
            dtype=float,
        )

    def _entry(
        self, kind: str, k: int, n: int, tid: int, doc_key: str, idf_cache: dict[int, float]
    ) -> float:
        stats = self.stats_
        if kind == "random":
            return uniform01(self.seed, tid, doc_key)
        if kind == "tp":
            return tp_score(k, n)
        idf = idf_cache.get(tid)
        if idf is None and kind in ("idf", "tf_idf", "tp_idf"):
            idf = idf_cache[tid] = idf_score(stats.doc_freq[tid], stats.n_docs)
        if kind == "idf":
            return idf
        if kind == "tf_idf":
            return k * idf
        if kind == "tp_idf":
            return tp_score(k, n) * idf
        if n > stats.n_tokens:
            raise ValueError(
                f"document of length {n} exceeds the fitted token population {stats.n_tokens}"
            )
        if k > stats.term_total[tid]:
            raise ValueError(
                f"term {stats.terms[tid]!r} occurs {k} times in the document but only "
                f"{stats.term_total[tid]} times in the fitted corpus"
            )
        return fisher_score(k, n, stats.term_total[tid], stats.n_tokens)

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        check_is_fitted(self, "stats_")
        return np.asarray(self.stats_.terms, dtype=object)
