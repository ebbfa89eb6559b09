"""Conical topic classifier.

Training reduces the corpus to two vectors: the elementwise maximum and
minimum of the unit-normalized training vectors.  A vector is in-topic iff
it is nonzero and lies between the two bounds in every dimension (the zero
vector carries none of the topic's terms and is always out-of-topic).

Because all document weights are nonnegative, the minimum bound is nonzero
only in dimensions where every training document contains the term; only
those lower bounds and the stored entries of the evaluation vector ever need
to be examined, and evaluation can stop at the first violated dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from .vectors import (
    SparseVector,
    combine,
    cosine_similarity,
    dot,
    unit_normalize,
)

IN_TOPIC = "in-topic"
OUT_OF_TOPIC = "out-of-topic"


@dataclass(frozen=True)
class Prediction:
    """Outcome of one membership test."""

    in_topic: bool
    dims_checked: int

    @property
    def label(self) -> str:
        return IN_TOPIC if self.in_topic else OUT_OF_TOPIC


def _as_sparse_list(X) -> List[SparseVector]:
    if isinstance(X, np.ndarray):
        if X.ndim != 2:
            raise ValueError("expected a 2-D array of row vectors")
        return [SparseVector.from_array(row) for row in X]
    vectors = list(X)
    for k, v in enumerate(vectors):
        if not isinstance(v, SparseVector):
            raise TypeError(f"element {k} is not a SparseVector: {type(v).__name__}")
    return vectors


class ConicalClassifier(BaseEstimator, ClassifierMixin):
    """One-class classifier over unit-normalized nonnegative sparse vectors.

    Parameters
    ----------
    tolerance : float
        Slack added outside both bounds before comparison.  The default 0.0
        uses exact floating-point comparisons, under which every training
        vector satisfies its own box.
    short_circuit : bool
        Stop the membership test at the first violated dimension.  Labels
        are identical either way; only dims_checked and runtime differ.
    """

    def __init__(self, tolerance: float = 0.0, short_circuit: bool = True):
        self.tolerance = tolerance
        self.short_circuit = short_circuit

    def fit(self, X, y=None) -> "ConicalClassifier":
        """Record per-dimension extremes of the training vectors.

        Every training vector must be unit-norm; a zero vector cannot be
        normalized and is rejected as degenerate.
        """
        vectors = _as_sparse_list(X)
        if not vectors:
            raise ValueError("empty corpus")
        dim = vectors[0].dim
        max_bounds: dict[int, float] = {}
        min_bounds: dict[int, float] = {}
        seen_counts: dict[int, int] = {}
        for k, v in enumerate(vectors):
            if v.dim != dim:
                raise ValueError(f"vector {k}: dimension mismatch: {v.dim} != {dim}")
            if v.is_zero():
                raise ValueError(f"degenerate training document (index {k}): zero vector")
            if abs(v.norm() - 1.0) > 1e-9:
                raise ValueError(
                    f"training vector {k} is not unit-norm: ||v|| = {v.norm()!r}"
                )
            for d, x in v.items():
                seen_counts[d] = seen_counts.get(d, 0) + 1
                if x > max_bounds.get(d, 0.0):
                    max_bounds[d] = x
                if x < min_bounds.get(d, math.inf):
                    min_bounds[d] = x

        n = len(vectors)
        self.n_features_in_ = dim
        self.n_samples_ = n
        self.classes_ = np.array([0, 1])
        self.max_vector_ = dict(sorted(max_bounds.items()))
        # A lower bound is binding only if every document contains the term.
        self.min_vector_ = {
            d: lo for d, lo in sorted(min_bounds.items()) if seen_counts[d] == n
        }
        self._min_items = tuple(self.min_vector_.items())
        self._dense_bounds = None
        return self

    def _membership(self, v: SparseVector, short_circuit: bool) -> Prediction:
        if v.dim != self.n_features_in_:
            raise ValueError(
                f"dimension mismatch: {v.dim} != {self.n_features_in_}"
            )
        if v.is_zero():
            return Prediction(False, 0)
        tol = self.tolerance
        max_bounds = self.max_vector_
        min_bounds = self.min_vector_
        checked = 0
        violated = False
        # Binding lower bounds first: a missing must-have term fails at once.
        for d, lo in self._min_items:
            checked += 1
            x = v.get(d)
            if x < lo - tol or x > max_bounds[d] + tol:
                if short_circuit:
                    return Prediction(False, checked)
                violated = True
        for d, x in v.items():
            if d in min_bounds:
                continue
            checked += 1
            if x > max_bounds.get(d, 0.0) + tol or x < -tol:
                if short_circuit:
                    return Prediction(False, checked)
                violated = True
        return Prediction(not violated, checked)

    def predict_one(self, v: SparseVector, short_circuit: Optional[bool] = None) -> Prediction:
        """Membership test for one vector."""
        check_is_fitted(self, "max_vector_")
        if short_circuit is None:
            short_circuit = self.short_circuit
        return self._membership(v, short_circuit)

    def predict_batch(self, X: Iterable[SparseVector]) -> List[Prediction]:
        """predict_one over a sequence, order preserved; the first
        dimension mismatch aborts with its index."""
        check_is_fitted(self, "max_vector_")
        out = []
        for k, v in enumerate(X):
            try:
                out.append(self._membership(v, self.short_circuit))
            except ValueError as exc:
                raise ValueError(f"vector {k}: {exc}") from None
        return out

    def predict(self, X) -> np.ndarray:
        """1 for in-topic, 0 for out-of-topic, per input vector."""
        if isinstance(X, np.ndarray):
            X = _as_sparse_list(X)
        return np.array([int(p.in_topic) for p in self.predict_batch(X)], dtype=int)


def brute_force_membership(model: ConicalClassifier, v: SparseVector) -> Prediction:
    """Full-scan membership oracle: dense bound comparison over every
    dimension, no short-circuit.  Must agree with predict_one on all inputs;
    dims_checked always equals the dimension count."""
    check_is_fitted(model, "max_vector_")
    if v.dim != model.n_features_in_:
        raise ValueError(f"dimension mismatch: {v.dim} != {model.n_features_in_}")
    if model._dense_bounds is None:
        lo = np.zeros(model.n_features_in_)
        hi = np.zeros(model.n_features_in_)
        for d, x in model.min_vector_.items():
            lo[d] = x
        for d, x in model.max_vector_.items():
            hi[d] = x
        model._dense_bounds = (lo, hi)
    lo, hi = model._dense_bounds
    arr = v.to_array()
    tol = model.tolerance
    inside = bool(np.all((arr >= lo - tol) & (arr <= hi + tol)))
    return Prediction(inside and not v.is_zero(), v.dim)


@dataclass(frozen=True)
class DecompositionResult:
    """Scalars of the convex combination lambda_x * x + lambda_y * y that
    points along the target direction."""

    lambda_x: float
    lambda_y: float
    iterations: int


def _clip_cos(c: float) -> float:
    return min(1.0, max(-1.0, c))


def decompose_between(
    x: SparseVector,
    y: SparseVector,
    target: SparseVector,
    tol: float = 1e-6,
    max_iterations: int = 64,
) -> DecompositionResult:
    """Find lambda_x, lambda_y >= 0 with lambda_x + lambda_y = 1 such that
    lambda_x * x + lambda_y * y is parallel to target.

    The target must lie between x and y: on their plane, with its angles to
    the two endpoints summing to the angle between them.  The scalars are
    located by bisection on lambda_x with cosine-similarity comparisons
    steering the bracket, stopping once the reconstruction matches the
    target direction within tol and the bracket pins lambda_x.

    Raises ValueError for a target outside the segment, antipodal endpoints,
    or no convergence within max_iterations.
    """
    if not 0.0 < tol < 1.0:
        raise ValueError(f"tolerance must be in (0, 1): {tol!r}")
    for name, v in (("x", x), ("y", y), ("target", target)):
        if v.is_zero():
            raise ValueError(f"{name} is the zero vector")
        if abs(v.norm() - 1.0) > 1e-9:
            raise ValueError(f"{name} is not unit-norm: ||v|| = {v.norm()!r}")

    cos_xy = _clip_cos(dot(x, y))
    if cos_xy <= -1.0 + 1e-12:
        raise ValueError("endpoints are antipodal")
    cos_tx = _clip_cos(dot(target, x))
    cos_ty = _clip_cos(dot(target, y))
    # In-between check: angles to the endpoints must sum to the full angle.
    angle_slack = math.sqrt(2.0 * tol)
    residual = (math.acos(cos_tx) + math.acos(cos_ty)) - math.acos(cos_xy)
    if abs(residual) > angle_slack:
        raise ValueError(
            f"target outside segment: angle residual {residual:.3e} exceeds {angle_slack:.3e}"
        )

    lo, hi = 0.0, 1.0
    lam = 0.5
    iterations = 0
    while iterations < max_iterations:
        iterations += 1
        lam = 0.5 * (lo + hi)
        mid = unit_normalize(combine(lam, x, 1.0 - lam, y))
        if cosine_similarity(mid, target) >= 1.0 - tol and hi - lo <= 1e-9:
            return DecompositionResult(lam, 1.0 - lam, iterations)
        # Larger lambda_x swings the combination toward x, monotonically.
        if cosine_similarity(mid, x) > cos_tx:
            hi = lam
        else:
            lo = lam
    raise ValueError(f"no convergence after {max_iterations} iterations")
