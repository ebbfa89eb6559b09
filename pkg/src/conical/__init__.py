"""One-class topic classification over weighted bag-of-words vectors.

Train on positive examples only: documents become unit-normalized sparse
vectors whose term weights score in-topic occurrence against general
language, and the classifier keeps the per-dimension extremes of the
training corpus.  A new document is in-topic iff its vector is nonzero and
sits between those extremes in every dimension.
"""

from .classifier import (
    IN_TOPIC,
    OUT_OF_TOPIC,
    ConicalClassifier,
    DecompositionResult,
    Prediction,
    brute_force_membership,
    decompose_between,
)
from .evaluate import (
    EvalReport,
    LabeledDataset,
    ProbeRow,
    RunRecord,
    SplitSpec,
    compute_metrics,
    random_unit_vectors,
    run_evaluation,
    split_dataset,
    time_scaling_probe,
)
from .model_io import FORMAT_VERSION, ConicalModel
from .text import (
    TermStatistics,
    Vocabulary,
    build_vocabulary,
    document_frequency_rates,
    read_corpus_lines,
    read_labeled_jsonl,
    term_frequencies,
    tokenize,
)
from .vectorizer import WEIGHTING_SCHEMES, TopicVectorizer
from .vectors import (
    SparseVector,
    combine,
    cosine_similarity,
    dot,
    unit_normalize,
)
from .weighting import (
    DEFAULT_EPSILON,
    WeightingConfig,
    WordFrequencyTable,
    bns_score,
    idf_weight_vector,
    inverse_normal_cdf,
    load_frequency_table,
    ne_score,
    ne_tf_vector,
    ne_weight_vector,
    normal_cdf,
    tfidf_vector,
    weight_and_normalize,
)

__version__ = "0.1.0"

__all__ = [
    "IN_TOPIC",
    "OUT_OF_TOPIC",
    "ConicalClassifier",
    "DecompositionResult",
    "Prediction",
    "brute_force_membership",
    "decompose_between",
    "EvalReport",
    "LabeledDataset",
    "ProbeRow",
    "RunRecord",
    "SplitSpec",
    "compute_metrics",
    "random_unit_vectors",
    "run_evaluation",
    "split_dataset",
    "time_scaling_probe",
    "FORMAT_VERSION",
    "ConicalModel",
    "TermStatistics",
    "Vocabulary",
    "build_vocabulary",
    "document_frequency_rates",
    "read_corpus_lines",
    "read_labeled_jsonl",
    "term_frequencies",
    "tokenize",
    "WEIGHTING_SCHEMES",
    "TopicVectorizer",
    "SparseVector",
    "combine",
    "cosine_similarity",
    "dot",
    "unit_normalize",
    "DEFAULT_EPSILON",
    "WeightingConfig",
    "WordFrequencyTable",
    "bns_score",
    "idf_weight_vector",
    "inverse_normal_cdf",
    "load_frequency_table",
    "ne_score",
    "ne_tf_vector",
    "ne_weight_vector",
    "normal_cdf",
    "tfidf_vector",
    "weight_and_normalize",
    "__version__",
]
