"""Seeded synthetic corpora with planted bursty terms.

Background tokens follow a Zipf-like distribution, which naturally yields
stopword-ish terms (high counts, present nearly everywhere) alongside a long
rare tail. On top of that, bursty terms are planted into a few documents each
with inflated counts; these are the document-specific terms a good scorer
should surface.
"""
from __future__ import annotations

import numpy as np

from .corpus import Document

__all__ = ["generate_bursty_corpus"]


def generate_bursty_corpus(
    n_docs: int = 500,
    background_vocab: int = 2000,
    doc_len_mean: float = 150.0,
    zipf_exponent: float = 1.0,
    n_bursty: int = 400,
    bursty_doc_count: int = 5,
    bursty_extra_mean: float = 10.0,
    seed: int = 0,
    no_universal_terms: bool = False,
) -> list[Document]:
    """Build a tokenized corpus; identical arguments give identical output.

    ``no_universal_terms`` removes every term that would otherwise occur in
    all documents from the single document where it is weakest, so that every
    term has doc_freq < n_docs (some scorers degenerate on universal terms).
    """
    if n_docs < 1 or background_vocab < 1:
        raise ValueError("n_docs and background_vocab must be >= 1")
    if bursty_doc_count > n_docs:
        raise ValueError(
            f"bursty_doc_count must be <= n_docs, got {bursty_doc_count} > {n_docs}"
        )
    rng = np.random.default_rng(seed)

    ranks = np.arange(1, background_vocab + 1, dtype=float)
    probs = ranks**-zipf_exponent
    probs /= probs.sum()
    width = len(str(background_vocab - 1))
    background = [f"w{i:0{width}d}" for i in range(background_vocab)]

    token_lists: list[list[str]] = []
    for _ in range(n_docs):
        length = max(1, int(rng.poisson(doc_len_mean)))
        draws = rng.choice(background_vocab, size=length, p=probs)
        token_lists.append([background[i] for i in draws])

    for b in range(n_bursty):
        term = f"bursty{b:04d}"
        chosen = rng.choice(n_docs, size=bursty_doc_count, replace=False)
        for j in sorted(chosen):
            occurrences = 1 + int(rng.poisson(bursty_extra_mean))
            token_lists[j].extend([term] * occurrences)

    if no_universal_terms:
        presence: dict[str, dict[int, int]] = {}
        for j, tokens in enumerate(token_lists):
            for tok in tokens:
                presence.setdefault(tok, {})
                presence[tok][j] = presence[tok].get(j, 0) + 1
        for term, where in presence.items():
            if len(where) == n_docs:
                weakest = min(where, key=lambda j: (where[j], j))
                token_lists[weakest] = [t for t in token_lists[weakest] if t != term]

    return [
        Document(doc_id=str(j), tokens=tuple(tokens))
        for j, tokens in enumerate(token_lists)
    ]
