"""One-vs-all evaluation harness.

Protocol: the designated topic is the positive class and every other topic
is pooled into the negative class.  Positives are split 70/15/15 into
train/validation/test; negatives, never used for training, are split 50/50
between validation and test.  Splits are reshuffled each repetition from a
derived seed, the classifier is trained on the positive training split
only, and accuracy, balanced accuracy, precision, recall, F1, and
end-to-end wall time are aggregated as mean and sample standard deviation.
"""

from __future__ import annotations

import dataclasses
import gc
import math
import random
import statistics
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .classifier import ConicalClassifier
from .text import read_labeled_jsonl
from .vectorizer import WEIGHTING_SCHEMES, TopicVectorizer
from .vectors import SparseVector
from .weighting import DEFAULT_EPSILON, WordFrequencyTable

METRIC_NAMES = ("accuracy", "balanced_accuracy", "precision", "recall", "f1")


@dataclass
class LabeledDataset:
    """Documents with topic labels and a designated positive topic."""

    texts: List[str]
    labels: List[str]
    positive_label: str

    def __post_init__(self):
        if len(self.texts) != len(self.labels):
            raise ValueError("texts and labels differ in length")

    @classmethod
    def from_jsonl(cls, path, positive_label: str) -> "LabeledDataset":
        records = read_labeled_jsonl(path)
        texts = [t for t, _ in records]
        labels = [l for _, l in records]
        return cls(texts, labels, positive_label)

    def positive_indices(self) -> List[int]:
        return [i for i, l in enumerate(self.labels) if l == self.positive_label]

    def negative_indices(self) -> List[int]:
        return [i for i, l in enumerate(self.labels) if l != self.positive_label]


@dataclass(frozen=True)
class SplitSpec:
    """Split fractions and the shuffle seed.

    Positives go train/validation/test; negatives go validation/test only.
    """

    train_fraction: float = 0.70
    validation_fraction: float = 0.15
    test_fraction: float = 0.15
    negative_validation_fraction: float = 0.50
    seed: int = 0

    def __post_init__(self):
        total = self.train_fraction + self.validation_fraction + self.test_fraction
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"positive fractions must sum to 1, got {total!r}")
        if min(self.train_fraction, self.validation_fraction, self.test_fraction) < 0:
            raise ValueError("fractions must be nonnegative")
        if not 0.0 <= self.negative_validation_fraction <= 1.0:
            raise ValueError("negative validation fraction must be in [0, 1]")


@dataclass
class DatasetSplit:
    train_indices: List[int]
    validation_indices: List[int]
    test_indices: List[int]
    train_texts: List[str]
    validation_texts: List[str]
    validation_truth: List[bool]
    test_texts: List[str]
    test_truth: List[bool]


def split_dataset(ds: LabeledDataset, spec: SplitSpec) -> DatasetSplit:
    """Deterministic shuffle-and-slice split.

    The training share of the positives is floored; the remainder is split
    between validation and test as evenly as possible, the odd document
    going to validation.  Negatives follow the same odd-to-validation rule.
    """
    pos = ds.positive_indices()
    neg = ds.negative_indices()
    if len(pos) < 3:
        raise ValueError(f"too few positive documents: need at least 3, got {len(pos)}")
    if len(neg) < 2:
        raise ValueError(f"too few negative documents: need at least 2, got {len(neg)}")

    rng = random.Random(spec.seed)
    rng.shuffle(pos)
    rng.shuffle(neg)

    n_train = math.floor(spec.train_fraction * len(pos))
    remainder = len(pos) - n_train
    n_val_pos = math.ceil(remainder * spec.validation_fraction
                          / (spec.validation_fraction + spec.test_fraction)) \
        if spec.validation_fraction + spec.test_fraction > 0 else 0
    train_idx = pos[:n_train]
    val_pos = pos[n_train:n_train + n_val_pos]
    test_pos = pos[n_train + n_val_pos:]

    n_val_neg = math.ceil(len(neg) * spec.negative_validation_fraction)
    val_neg = neg[:n_val_neg]
    test_neg = neg[n_val_neg:]

    validation = val_pos + val_neg
    test = test_pos + test_neg
    val_pos_set, test_pos_set = set(val_pos), set(test_pos)
    return DatasetSplit(
        train_indices=train_idx,
        validation_indices=validation,
        test_indices=test,
        train_texts=[ds.texts[i] for i in train_idx],
        validation_texts=[ds.texts[i] for i in validation],
        validation_truth=[i in val_pos_set for i in validation],
        test_texts=[ds.texts[i] for i in test],
        test_truth=[i in test_pos_set for i in test],
    )


def compute_metrics(predictions: Sequence[bool], truth: Sequence[bool]) -> Dict[str, float]:
    """Accuracy, balanced accuracy, precision, recall, F1 from hard labels.

    Precision, recall, and F1 fall back to 0 when their denominator is 0.
    """
    if len(predictions) != len(truth):
        raise ValueError(
            f"length mismatch: {len(predictions)} predictions, {len(truth)} truths"
        )
    if not truth:
        raise ValueError("empty input")
    tp = fp = tn = fn = 0
    for p, t in zip(predictions, truth):
        if p and t:
            tp += 1
        elif p and not t:
            fp += 1
        elif not p and t:
            fn += 1
        else:
            tn += 1
    n = tp + fp + tn + fn
    tpr = tp / (tp + fn) if tp + fn else 0.0
    tnr = tn / (tn + fp) if tn + fp else 0.0
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tpr
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return {
        "accuracy": (tp + tn) / n,
        "balanced_accuracy": (tpr + tnr) / 2.0,
        "precision": precision,
        "recall": recall,
        "f1": f1,
    }


@dataclass
class RunRecord:
    repetition: int
    seed: int
    elapsed_seconds: float
    metrics: Dict[str, float]
    validation_metrics: Dict[str, float]
    n_train: int
    n_validation: int
    n_test: int

    def record(self) -> dict:
        return {
            "record": "run",
            "repetition": self.repetition,
            "seed": self.seed,
            "elapsed_seconds": self.elapsed_seconds,
            "metrics": self.metrics,
            "validation_metrics": self.validation_metrics,
            "n_train": self.n_train,
            "n_validation": self.n_validation,
            "n_test": self.n_test,
        }


@dataclass
class EvalReport:
    """Mean and sample standard deviation of the test metrics and wall time
    over all repetitions."""

    repetitions: int
    weighting: str
    mean: Dict[str, float]
    std: Dict[str, float]
    runs: List[RunRecord] = field(default_factory=list, repr=False)

    def summary_record(self) -> dict:
        """Machine-readable summary; metrics only, so the record is
        byte-stable across identically seeded runs."""
        return {
            "record": "summary",
            "repetitions": self.repetitions,
            "weighting": self.weighting,
            "metrics": {
                name: {"mean": self.mean[name], "std": self.std[name]}
                for name in METRIC_NAMES
            },
        }

    def table(self) -> str:
        width = max(len(n) for n in (*METRIC_NAMES, "time_seconds"))
        lines = [f"{'metric'.ljust(width)}      mean       std"]
        for name in (*METRIC_NAMES, "time_seconds"):
            lines.append(f"{name.ljust(width)}  {self.mean[name]:8.4f}  {self.std[name]:8.4f}")
        return "\n".join(lines)


def _mean_std(values: Sequence[float]) -> Tuple[float, float]:
    mean = statistics.fmean(values)
    std = statistics.stdev(values) if len(values) > 1 else 0.0
    return mean, std


def run_evaluation(
    ds: LabeledDataset,
    spec: SplitSpec = SplitSpec(),
    repetitions: int = 20,
    weighting: str = "ne-tf",
    word_frequencies: Optional[WordFrequencyTable] = None,
    epsilon: float = DEFAULT_EPSILON,
) -> EvalReport:
    """Repeatedly resplit, train on the positive training split, and score
    the test split.

    Repetition i uses seed spec.seed + i.  The timed window of each
    repetition covers vectorizer fitting, train/test vectorization, box
    fitting, and test prediction; validation scoring happens outside it.
    """
    if repetitions < 1:
        raise ValueError(f"repetitions must be >= 1, got {repetitions}")
    if weighting not in WEIGHTING_SCHEMES:
        raise ValueError(
            f"unknown weighting {weighting!r}; valid options: " + ", ".join(WEIGHTING_SCHEMES)
        )
    runs: List[RunRecord] = []
    for i in range(repetitions):
        rep_spec = dataclasses.replace(spec, seed=spec.seed + i)
        split = split_dataset(ds, rep_spec)

        start = time.perf_counter()
        vec = TopicVectorizer(weighting=weighting, epsilon=epsilon,
                              word_frequencies=word_frequencies)
        vec.fit(split.train_texts)
        train_vectors = vec.transform(split.train_texts)
        clf = ConicalClassifier().fit(train_vectors)
        test_vectors = vec.transform(split.test_texts)
        test_preds = [p.in_topic for p in clf.predict_batch(test_vectors)]
        elapsed = time.perf_counter() - start

        val_vectors = vec.transform(split.validation_texts)
        val_preds = [p.in_topic for p in clf.predict_batch(val_vectors)]
        runs.append(RunRecord(
            repetition=i,
            seed=rep_spec.seed,
            elapsed_seconds=elapsed,
            metrics=compute_metrics(test_preds, split.test_truth),
            validation_metrics=compute_metrics(val_preds, split.validation_truth),
            n_train=len(split.train_texts),
            n_validation=len(split.validation_texts),
            n_test=len(split.test_texts),
        ))

    mean: Dict[str, float] = {}
    std: Dict[str, float] = {}
    for name in METRIC_NAMES:
        mean[name], std[name] = _mean_std([r.metrics[name] for r in runs])
    mean["time_seconds"], std["time_seconds"] = _mean_std(
        [r.elapsed_seconds for r in runs]
    )
    return EvalReport(repetitions=repetitions, weighting=weighting,
                      mean=mean, std=std, runs=runs)


@dataclass(frozen=True)
class ProbeRow:
    n: int
    seconds: float
    ratio: Optional[float]  # vs the previous batch size; None when undefined


def random_unit_vectors(dim: int, n: int, nnz: int = 32, seed: int = 0) -> List[SparseVector]:
    """Batch of random nonnegative unit sparse vectors."""
    rng = np.random.default_rng(seed)
    out = []
    nnz = min(nnz, dim)
    for _ in range(n):
        dims = rng.choice(dim, size=nnz, replace=False)
        vals = rng.random(nnz) + 1e-9
        vals /= np.linalg.norm(vals)
        out.append(SparseVector(dim, {int(d): float(x) for d, x in zip(dims, vals)}))
    return out


def time_scaling_probe(
    model: ConicalClassifier,
    n_list: Sequence[int],
    nnz: int = 32,
    seed: int = 0,
    passes: int = 3,
) -> List[ProbeRow]:
    """Wall time of predict_batch over random batches of increasing size at
    the model's fixed dimensionality, with consecutive-size time ratios.

    Each batch is timed `passes` times and the minimum is kept, which
    suppresses allocator and GC noise in the ratios.
    """
    if list(n_list) != sorted(n_list):
        raise ValueError("batch sizes must be ascending")
    if passes < 1:
        raise ValueError("passes must be >= 1")
    dim = model.n_features_in_
    rows: List[ProbeRow] = []
    warmup = random_unit_vectors(dim, 256, nnz=nnz, seed=seed + 1)
    model.predict_batch(warmup)
    prev: Optional[ProbeRow] = None
    for k, n in enumerate(n_list):
        batch = random_unit_vectors(dim, n, nnz=nnz, seed=seed + 1000 + k)
        seconds = math.inf
        for _ in range(passes):
            gc.collect()
            start = time.perf_counter()
            model.predict_batch(batch)
            seconds = min(seconds, time.perf_counter() - start)
        ratio = None
        if prev is not None and prev.n > 0 and prev.seconds > 0.0:
            ratio = seconds / prev.seconds
        prev = ProbeRow(n=n, seconds=seconds, ratio=ratio)
        rows.append(prev)
    return rows
