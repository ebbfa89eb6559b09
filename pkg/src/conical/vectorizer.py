"""Corpus-to-vector front end with a scikit-learn transformer interface."""

from __future__ import annotations

from typing import List, Optional

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .text import build_vocabulary, document_frequency_rates, term_frequencies, tokenize
from .vectors import SparseVector
from .weighting import (
    DEFAULT_EPSILON,
    WeightingConfig,
    WordFrequencyTable,
    idf_weight_vector,
    ne_weight_vector,
    weight_and_normalize,
)

WEIGHTING_SCHEMES = ("ne-tf", "tf-idf")


class TopicVectorizer(BaseEstimator, TransformerMixin):
    """Learn a vocabulary and per-term weights from a positive corpus, then
    map raw documents to unit-normalized weighted term-frequency vectors.

    Parameters
    ----------
    weighting : {"ne-tf", "tf-idf"}
        "ne-tf" scores each term's document rate against its
        general-language frequency; "tf-idf" uses floored-log inverse
        document frequency (comparison scheme).
    epsilon : float
        Probability offset for the ne-tf quantile transform.
    word_frequencies : WordFrequencyTable, optional
        General-language lexicon for ne-tf.  Without one, every term looks
        up as frequency 0.
    """

    def __init__(self, weighting: str = "ne-tf", epsilon: float = DEFAULT_EPSILON,
                 word_frequencies: Optional[WordFrequencyTable] = None):
        self.weighting = weighting
        self.epsilon = epsilon
        self.word_frequencies = word_frequencies

    def fit(self, raw_documents, y=None) -> "TopicVectorizer":
        if self.weighting not in WEIGHTING_SCHEMES:
            raise ValueError(
                f"unknown weighting {self.weighting!r}; valid options: "
                + ", ".join(WEIGHTING_SCHEMES)
            )
        config = WeightingConfig(epsilon=self.epsilon)
        docs = list(raw_documents)
        if not docs:
            raise ValueError("empty corpus")
        tokenized = [tokenize(text) for text in docs]
        vocab = build_vocabulary(tokenized)
        if len(vocab) == 0:
            raise ValueError("empty vocabulary: no terms in training corpus")
        stats = document_frequency_rates(tokenized, vocab)
        if self.weighting == "ne-tf":
            table = self.word_frequencies or WordFrequencyTable.empty()
            weights = ne_weight_vector(stats, table, vocab, config)
        else:
            weights = idf_weight_vector(stats.doc_counts, stats.n_docs)
        self.vocabulary_ = vocab
        self.term_stats_ = stats
        self.weights_ = weights
        self.n_features_in_ = len(vocab)
        return self

    def transform(self, raw_documents) -> List[SparseVector]:
        """Unit-normalized weighted vectors; documents with no in-vocabulary
        terms come out as zero vectors."""
        check_is_fitted(self, "vocabulary_")
        return [self.transform_one(text) for text in raw_documents]

    def transform_one(self, text: str) -> SparseVector:
        check_is_fitted(self, "vocabulary_")
        tf = term_frequencies(tokenize(text), self.vocabulary_)
        return weight_and_normalize(tf, self.weights_)

    def top_terms(self, k: Optional[int] = None):
        """Terms ranked by descending weight (ties by term), with their
        document rate, lexicon frequency, and weight."""
        check_is_fitted(self, "vocabulary_")
        table = self.word_frequencies or WordFrequencyTable.empty()
        tpr = self.term_stats_.tpr
        rows = [
            (self.vocabulary_.term(d), float(tpr[d]),
             table.lookup(self.vocabulary_.term(d)), float(self.weights_[d]))
            for d in range(len(self.vocabulary_))
        ]
        rows.sort(key=lambda r: (-r[3], r[0]))
        return rows if k is None else rows[: max(k, 0)]

    @classmethod
    def from_fitted(cls, vocabulary, weights: np.ndarray, weighting: str = "ne-tf",
                    epsilon: float = DEFAULT_EPSILON) -> "TopicVectorizer":
        """Rebuild a fitted vectorizer from stored vocabulary and weights
        (no lexicon or statistics needed for transform)."""
        vec = cls(weighting=weighting, epsilon=epsilon)
        vec.vocabulary_ = vocabulary
        vec.weights_ = np.asarray(weights, dtype=float)
        vec.n_features_in_ = len(vocabulary)
        return vec
