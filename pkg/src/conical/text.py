"""Text pipeline: tokenization, vocabulary construction, term frequencies.

The vocabulary is compiled from the positive training corpus only; terms seen
at prediction time that are not in it carry no dimension and are dropped.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .vectors import SparseVector

# Maximal runs of Unicode alphanumerics (underscore excluded).
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> List[str]:
    """Lowercase and split on runs of non-alphanumeric characters."""
    return _TOKEN_RE.findall(text.lower())


class Vocabulary:
    """Bijection between terms and dimension indices, lexicographically ordered."""

    __slots__ = ("terms", "index")

    def __init__(self, terms: Sequence[str]):
        self.terms: Tuple[str, ...] = tuple(terms)
        self.index: Dict[str, int] = {t: i for i, t in enumerate(self.terms)}
        if len(self.index) != len(self.terms):
            raise ValueError("duplicate terms in vocabulary")

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.index

    def lookup(self, term: str) -> Optional[int]:
        return self.index.get(term)

    def term(self, i: int) -> str:
        return self.terms[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vocabulary):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        return f"Vocabulary({len(self)} terms)"


def build_vocabulary(corpus: Sequence[Sequence[str]]) -> Vocabulary:
    """Collect the distinct terms of a tokenized corpus, sorted lexicographically."""
    if len(corpus) == 0:
        raise ValueError("empty corpus")
    seen = set()
    for tokens in corpus:
        seen.update(tokens)
    return Vocabulary(sorted(seen))


def term_frequencies(tokens: Sequence[str], vocab: Vocabulary) -> SparseVector:
    """Per-document term frequencies over the vocabulary dimensions.

    Each in-vocabulary term gets weight count/len(tokens); out-of-vocabulary
    terms are dropped but still count toward the document length, so the
    weights sum to the in-vocabulary fraction of the document.  Empty or
    all-OOV documents produce the zero vector.
    """
    v = SparseVector(len(vocab))
    if not tokens:
        return v
    total = len(tokens)
    for term, count in Counter(tokens).items():
        i = vocab.lookup(term)
        if i is not None:
            v.put(i, count / total)
    return v


@dataclass(frozen=True)
class TermStatistics:
    """Per-term document-containment counts over a corpus.

    doc_counts[d] is the number of positive training documents containing the
    vocabulary term at dimension d.  When a negative corpus is supplied (for
    two-class separation scores) neg_doc_counts/n_neg are populated as well.
    """

    doc_counts: np.ndarray
    n_docs: int
    neg_doc_counts: Optional[np.ndarray] = None
    n_neg: Optional[int] = None

    def __post_init__(self):
        if self.n_docs <= 0:
            raise ValueError("empty corpus")
        if self.doc_counts.min(initial=0) < 0 or self.doc_counts.max(initial=0) > self.n_docs:
            raise ValueError("document counts out of range")
        if (self.neg_doc_counts is None) != (self.n_neg is None):
            raise ValueError("negative counts and corpus size must be supplied together")
        if self.neg_doc_counts is not None:
            if self.n_neg <= 0:
                raise ValueError("empty negative corpus")
            if self.neg_doc_counts.min(initial=0) < 0 \
                    or self.neg_doc_counts.max(initial=0) > self.n_neg:
                raise ValueError("negative document counts out of range")

    @property
    def tpr(self) -> np.ndarray:
        """Fraction of documents containing each term."""
        return self.doc_counts / self.n_docs

    @property
    def fpr(self) -> Optional[np.ndarray]:
        if self.neg_doc_counts is None:
            return None
        return self.neg_doc_counts / self.n_neg


def _containment_counts(corpus: Sequence[Sequence[str]], vocab: Vocabulary) -> np.ndarray:
    counts = np.zeros(len(vocab), dtype=np.int64)
    for tokens in corpus:
        for term in set(tokens):
            i = vocab.lookup(term)
            if i is not None:
                counts[i] += 1
    return counts


def document_frequency_rates(
    corpus: Sequence[Sequence[str]],
    vocab: Vocabulary,
    negative_corpus: Optional[Sequence[Sequence[str]]] = None,
) -> TermStatistics:
    """Count, per vocabulary term, the documents containing it at least once."""
    if len(corpus) == 0:
        raise ValueError("empty corpus")
    neg_counts = None
    n_neg = None
    if negative_corpus is not None:
        if len(negative_corpus) == 0:
            raise ValueError("empty negative corpus")
        neg_counts = _containment_counts(negative_corpus, vocab)
        n_neg = len(negative_corpus)
    return TermStatistics(
        doc_counts=_containment_counts(corpus, vocab),
        n_docs=len(corpus),
        neg_doc_counts=neg_counts,
        n_neg=n_neg,
    )


def read_corpus_lines(path) -> List[str]:
    """Read a one-document-per-line corpus file (UTF-8, LF-terminated)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    lines = raw.split(b"\n")
    if lines and lines[-1] == b"":
        lines.pop()
    docs = []
    for lineno, line in enumerate(lines, start=1):
        try:
            docs.append(line.decode("utf-8"))
        except UnicodeDecodeError as exc:
            raise ValueError(
                f"{path}: line {lineno}: invalid UTF-8 ({exc.reason})"
            ) from None
    return docs


def read_labeled_jsonl(path) -> List[Tuple[str, str]]:
    """Read (text, label) records from a JSON-lines file.

    Each non-blank line must be a JSON object with string fields ``text``
    and ``label``.
    """
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}: line {lineno}: invalid JSON: {exc}") from exc
            if not isinstance(obj, dict) or not isinstance(obj.get("text"), str) \
                    or not isinstance(obj.get("label"), str):
                raise ValueError(
                    f"{path}: line {lineno}: expected an object with string "
                    f"fields 'text' and 'label'"
                )
            records.append((obj["text"], obj["label"]))
    return records
