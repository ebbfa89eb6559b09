"""Versioned on-disk format for trained models.

A model file is a single JSON object holding the vocabulary, the per-term
weight vector, the sparse min/max bound vectors, and the weighting offset.
Serialization is byte-deterministic: sorted keys, LF line ending, UTF-8,
shortest-roundtrip float repr.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List

import numpy as np

from .classifier import ConicalClassifier
from .text import Vocabulary
from .vectorizer import TopicVectorizer
from .weighting import DEFAULT_EPSILON

FORMAT_VERSION = 1


@dataclass
class ConicalModel:
    """Trained classifier state: vocabulary, weights, and box bounds."""

    terms: List[str]
    weights: List[float]
    max_vector: Dict[int, float]
    min_vector: Dict[int, float]
    epsilon: float = DEFAULT_EPSILON
    version: int = FORMAT_VERSION

    @classmethod
    def from_fitted(cls, vectorizer: TopicVectorizer,
                    classifier: ConicalClassifier) -> "ConicalModel":
        return cls(
            terms=list(vectorizer.vocabulary_.terms),
            weights=[float(w) for w in vectorizer.weights_],
            max_vector=dict(classifier.max_vector_),
            min_vector=dict(classifier.min_vector_),
            epsilon=vectorizer.epsilon,
        )

    def vectorizer(self) -> TopicVectorizer:
        return TopicVectorizer.from_fitted(
            Vocabulary(self.terms), np.array(self.weights), epsilon=self.epsilon
        )

    def classifier(self) -> ConicalClassifier:
        clf = ConicalClassifier()
        clf.n_features_in_ = len(self.terms)
        clf.n_samples_ = 0
        clf.classes_ = np.array([0, 1])
        clf.max_vector_ = dict(sorted(self.max_vector.items()))
        clf.min_vector_ = dict(sorted(self.min_vector.items()))
        clf._min_items = tuple(clf.min_vector_.items())
        clf._dense_bounds = None
        return clf

    def to_json(self) -> str:
        payload = {
            "format_version": self.version,
            "epsilon": self.epsilon,
            "terms": self.terms,
            "weights": self.weights,
            "max_vector": [[d, x] for d, x in sorted(self.max_vector.items())],
            "min_vector": [[d, x] for d, x in sorted(self.min_vector.items())],
        }
        return json.dumps(payload, sort_keys=True, ensure_ascii=False,
                          separators=(",", ":")) + "\n"

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_json())

    @classmethod
    def load(cls, path) -> "ConicalModel":
        with open(path, encoding="utf-8") as fh:
            try:
                payload = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}: not a valid model file: {exc}") from exc
        try:
            version = payload["format_version"]
            if version > FORMAT_VERSION:
                raise ValueError(
                    f"{path}: model format version {version} is newer than "
                    f"supported version {FORMAT_VERSION}"
                )
            model = cls(
                terms=list(payload["terms"]),
                weights=[float(w) for w in payload["weights"]],
                max_vector={int(d): float(x) for d, x in payload["max_vector"]},
                min_vector={int(d): float(x) for d, x in payload["min_vector"]},
                epsilon=float(payload["epsilon"]),
                version=int(version),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"{path}: not a valid model file: {exc!r}") from exc
        if len(model.weights) != len(model.terms):
            raise ValueError(f"{path}: weight count does not match vocabulary size")
        return model
