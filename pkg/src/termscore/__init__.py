"""Term scoring via proportions, idf, and the hypergeometric exact test.

Core pipeline: ingest documents, reduce them to term-document statistics,
score term-document pairs (tp, idf, tf-idf, tp-idf, fisher, random), rank
documents for queries or terms for summaries, and measure how strongly the
scorers agree. The surrogate module analyzes the continuous relaxations of
the scorers and their shared small-rate limit.
"""
from .corpus import (
    Document,
    PipelineConfig,
    RawDocument,
    default_stopwords,
    ingest_jsonl,
    ingest_nysk_xml,
    ingest_txt_dir,
    int_to_words,
    load_stopwords,
    normalize_suffix,
    preprocess,
    preprocess_corpus,
)
from .evaluation import (
    AgreementRow,
    AgreementStat,
    BurstyPools,
    SummarizationResult,
    burstiness,
    p_at_10,
    random_overlap_baseline,
    run_one_term_experiment,
    run_summarization_experiment,
    run_two_term_experiment,
    select_bursty_pools,
)
from .ranking import Ranking, build_ranking, rank_documents, summarize_document, top_k
from .randomness import derive_seed, stable_key, uniform01
from .scoring import (
    SCORER_KINDS,
    TailResult,
    fisher_score,
    hypergeom_tail,
    idf_score,
    score,
    score_matrix,
    tf_idf_score,
    tp_idf_score,
    tp_score,
)
from .stats import TermDocStats, build_stats, load_stats, lookup, save_stats
from .surrogate import (
    ChvatalResult,
    ChvatalSweep,
    RegressionFit,
    SurrogateParams,
    bernoulli_kl,
    chvatal_check,
    chvatal_sweep,
    contour_grid,
    dominance_profile,
    fisher_surrogate,
    fisher_surrogate_expanded,
    fisher_surrogate_polar,
    fisher_surrogate_scaled,
    fit_idf_linearity,
    polar_point,
    scaling_identity_residual,
    tpidf_surrogate,
    tpidf_surrogate_polar,
    tpidf_surrogate_scaled,
)
from .synth import generate_bursty_corpus
from .vectorizer import TermScoreVectorizer

__version__ = "0.1.0"

__all__ = [
    "Document",
    "PipelineConfig",
    "RawDocument",
    "default_stopwords",
    "ingest_jsonl",
    "ingest_nysk_xml",
    "ingest_txt_dir",
    "int_to_words",
    "load_stopwords",
    "normalize_suffix",
    "preprocess",
    "preprocess_corpus",
    "AgreementRow",
    "AgreementStat",
    "BurstyPools",
    "SummarizationResult",
    "burstiness",
    "p_at_10",
    "random_overlap_baseline",
    "run_one_term_experiment",
    "run_summarization_experiment",
    "run_two_term_experiment",
    "select_bursty_pools",
    "Ranking",
    "build_ranking",
    "rank_documents",
    "summarize_document",
    "top_k",
    "derive_seed",
    "stable_key",
    "uniform01",
    "SCORER_KINDS",
    "TailResult",
    "fisher_score",
    "hypergeom_tail",
    "idf_score",
    "score",
    "score_matrix",
    "tf_idf_score",
    "tp_idf_score",
    "tp_score",
    "TermDocStats",
    "build_stats",
    "load_stats",
    "lookup",
    "save_stats",
    "ChvatalResult",
    "ChvatalSweep",
    "RegressionFit",
    "SurrogateParams",
    "bernoulli_kl",
    "chvatal_check",
    "chvatal_sweep",
    "contour_grid",
    "dominance_profile",
    "fisher_surrogate",
    "fisher_surrogate_expanded",
    "fisher_surrogate_polar",
    "fisher_surrogate_scaled",
    "fit_idf_linearity",
    "polar_point",
    "scaling_identity_residual",
    "tpidf_surrogate",
    "tpidf_surrogate_polar",
    "tpidf_surrogate_scaled",
    "generate_bursty_corpus",
    "TermScoreVectorizer",
    "__version__",
]
