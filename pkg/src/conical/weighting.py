"""Term-weighting schemes for one-class bag-of-words vectors.

Two corpus-level weights are provided: a two-class separation score between
the positive-document rate and a negative-document rate (Bi-Normal
Separation), and its one-class variant that substitutes the general-language
frequency of the term for the negative rate (Normal Exclusion).  Both push
the rates through the inverse normal CDF and take the absolute gap, so terms
whose in-topic occurrence matches their background occurrence score near
zero.  A floored-log IDF weight is included for comparison runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Mapping, Optional

import numpy as np

from .text import TermStatistics, Vocabulary
from .vectors import SparseVector, unit_normalize

DEFAULT_EPSILON = 0.0005

_SQRT2 = math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

# Acklam's rational approximation to the standard normal quantile.
_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00)
_P_LOW = 0.02425


def normal_cdf(z: float) -> float:
    """Standard normal CDF via the complementary error function."""
    return 0.5 * math.erfc(-z / _SQRT2)


def inverse_normal_cdf(p: float) -> float:
    """Quantile of the standard normal distribution.

    Rational approximation refined with one Halley step against the
    erfc-based CDF; absolute error well below 1e-9 across the open unit
    interval.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"probability out of open interval (0, 1): {p!r}")

    if p < _P_LOW:
        q = math.sqrt(-2.0 * math.log(p))
        z = (((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / \
            ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0)
    elif p <= 1.0 - _P_LOW:
        q = p - 0.5
        r = q * q
        z = (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q / \
            (((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0)
    else:
        q = math.sqrt(-2.0 * math.log(1.0 - p))
        z = -(((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / \
            ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0)

    # One Halley refinement step.
    err = normal_cdf(z) - p
    u = err * _SQRT_2PI * math.exp(0.5 * z * z)
    return z - u / (1.0 + 0.5 * z * u)


@dataclass(frozen=True)
class WeightingConfig:
    """Probability offset applied before the quantile transform."""

    epsilon: float = DEFAULT_EPSILON
    lexicon_path: Optional[str] = None

    def __post_init__(self):
        if not 0.0 < self.epsilon < 0.5:
            raise ValueError(f"epsilon must be in (0, 0.5): {self.epsilon!r}")


def _check_rate(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must be in [0, 1]: {value!r}")


def bns_score(tpr: float, fpr: float, epsilon: float = DEFAULT_EPSILON) -> float:
    """Separation of two occurrence rates under the inverse normal CDF.

    Both rates are offset by epsilon and clamped to [epsilon, 1 - epsilon]
    before the quantile transform, which keeps the transform defined at
    rates of 0 and 1.
    """
    _check_rate("tpr", tpr)
    _check_rate("fpr", fpr)
    if not 0.0 < epsilon < 0.5:
        raise ValueError(f"epsilon must be in (0, 0.5): {epsilon!r}")
    hi = 1.0 - epsilon
    a = min(max(tpr + epsilon, epsilon), hi)
    b = min(max(fpr + epsilon, epsilon), hi)
    return abs(inverse_normal_cdf(a) - inverse_normal_cdf(b))


def ne_score(tpr: float, word_freq: float, epsilon: float = DEFAULT_EPSILON) -> float:
    """One-class variant of bns_score: the general-language frequency of the
    word stands in for the negative-class rate."""
    return bns_score(tpr, word_freq, epsilon)


class WordFrequencyTable:
    """Term -> relative frequency in general language.

    Frequencies are raw counts normalized by their total; absent terms
    look up as exactly 0.0.
    """

    __slots__ = ("freq", "total_tokens")

    def __init__(self, freq: Mapping[str, float], total_tokens: float):
        self.freq: Dict[str, float] = dict(freq)
        self.total_tokens = total_tokens
        for term, f in self.freq.items():
            if not 0.0 <= f <= 1.0:
                raise ValueError(f"frequency out of [0, 1] for {term!r}: {f!r}")

    @classmethod
    def from_counts(cls, counts: Mapping[str, float]) -> "WordFrequencyTable":
        if not counts:
            raise ValueError("empty frequency table")
        total = 0.0
        for term, c in counts.items():
            if c < 0:
                raise ValueError(f"negative count for {term!r}: {c!r}")
            total += c
        if total <= 0:
            raise ValueError("frequency table has zero total count")
        return cls({t: c / total for t, c in counts.items()}, total)

    @classmethod
    def empty(cls) -> "WordFrequencyTable":
        """Table with no entries; every lookup is 0."""
        table = cls.__new__(cls)
        table.freq = {}
        table.total_tokens = 0.0
        return table

    def lookup(self, term: str) -> float:
        return self.freq.get(term, 0.0)

    def __len__(self) -> int:
        return len(self.freq)


def load_frequency_table(path) -> WordFrequencyTable:
    """Load a lexicon of ``term<TAB>raw_count`` lines (UTF-8).

    Counts for repeated terms accumulate.  Blank lines are skipped;
    anything else that does not parse is an error naming the line.
    """
    counts: Dict[str, float] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0]:
                raise ValueError(f"{path}: line {lineno}: expected 'term<TAB>count'")
            try:
                count = float(parts[1])
            except ValueError:
                raise ValueError(
                    f"{path}: line {lineno}: non-numeric count {parts[1]!r}"
                ) from None
            if count < 0:
                raise ValueError(f"{path}: line {lineno}: negative count {parts[1]!r}")
            counts[parts[0]] = counts.get(parts[0], 0.0) + count
    if not counts:
        raise ValueError(f"{path}: empty frequency table")
    return WordFrequencyTable.from_counts(counts)


def ne_weight_vector(
    stats: TermStatistics,
    table: WordFrequencyTable,
    vocab: Vocabulary,
    config: WeightingConfig = WeightingConfig(),
) -> np.ndarray:
    """Per-dimension ne_score of the term's document rate against its
    general-language frequency."""
    if len(vocab) == 0:
        raise ValueError("empty vocabulary")
    if stats.doc_counts.shape[0] != len(vocab):
        raise ValueError(
            f"statistics cover {stats.doc_counts.shape[0]} terms, vocabulary has {len(vocab)}"
        )
    tpr = stats.tpr
    return np.array([
        ne_score(float(tpr[d]), table.lookup(vocab.term(d)), config.epsilon)
        for d in range(len(vocab))
    ])


def idf_weight_vector(doc_counts: np.ndarray, n_docs: int) -> np.ndarray:
    """ln(N / (1 + df)) floored at zero, per dimension."""
    if n_docs <= 0:
        raise ValueError("empty corpus")
    idf = np.log(n_docs / (1.0 + np.asarray(doc_counts, dtype=float)))
    return np.maximum(idf, 0.0)


def weight_and_normalize(tf: SparseVector, weights: np.ndarray) -> SparseVector:
    """Elementwise product of a TF vector with per-dimension weights, scaled
    to unit length; a zero product stays the zero vector."""
    if tf.dim != weights.shape[0]:
        raise ValueError(f"dimension mismatch: {tf.dim} != {weights.shape[0]}")
    out = SparseVector(tf.dim)
    for i, x in tf.items():
        out.put(i, x * float(weights[i]))
    return unit_normalize(out)


def ne_tf_vector(tf: SparseVector, ne_weights: np.ndarray) -> SparseVector:
    """Unit-normalized product of term frequencies with their one-class
    separation weights; the document representation used for training and
    prediction."""
    return weight_and_normalize(tf, ne_weights)


def tfidf_vector(tf: SparseVector, doc_counts: np.ndarray, n_docs: int) -> SparseVector:
    """Unit-normalized TF-IDF vector (floored-log IDF), for comparison runs."""
    if tf.dim != np.asarray(doc_counts).shape[0]:
        raise ValueError(
            f"dimension mismatch: {tf.dim} != {np.asarray(doc_counts).shape[0]}"
        )
    return weight_and_normalize(tf, idf_weight_vector(doc_counts, n_docs))
