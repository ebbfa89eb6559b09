"""Sparse vectors over a fixed-dimension vocabulary space.

Documents are represented as term-indexed weight vectors that are almost
entirely zero, so storage is a dict keyed by dimension index.  Entries with
value exactly 0.0 are never stored; a vector with no stored entries is the
zero vector.
"""

from __future__ import annotations

import math
from typing import Dict, Iterable, Iterator, Tuple

import numpy as np


class SparseVector:
    """Fixed-dimension vector storing only nonzero entries."""

    __slots__ = ("dim", "_data")

    def __init__(self, dim: int, entries: Dict[int, float] | None = None):
        if dim < 0:
            raise ValueError(f"negative dimension: {dim}")
        self.dim = dim
        self._data: Dict[int, float] = {}
        if entries:
            for i, x in entries.items():
                self.put(i, x)

    def put(self, i: int, value: float) -> None:
        if i < 0 or i >= self.dim:
            raise IndexError(f"index {i} out of range for dimension {self.dim}")
        if value == 0.0:
            self._data.pop(i, None)
        else:
            self._data[i] = value

    def get(self, i: int) -> float:
        if i < 0 or i >= self.dim:
            raise IndexError(f"index {i} out of range for dimension {self.dim}")
        return self._data.get(i, 0.0)

    def items(self) -> Iterator[Tuple[int, float]]:
        return iter(self._data.items())

    @property
    def nnz(self) -> int:
        return len(self._data)

    def is_zero(self) -> bool:
        return not self._data

    def norm(self) -> float:
        return math.sqrt(sum(x * x for x in self._data.values()))

    def scaled(self, alpha: float) -> "SparseVector":
        out = SparseVector(self.dim)
        if alpha != 0.0:
            out._data = {i: alpha * x for i, x in self._data.items()}
        return out

    def to_array(self) -> np.ndarray:
        arr = np.zeros(self.dim)
        if self._data:
            arr[list(self._data)] = list(self._data.values())
        return arr

    @classmethod
    def from_array(cls, arr) -> "SparseVector":
        arr = np.asarray(arr, dtype=float)
        if arr.ndim != 1:
            raise ValueError("expected a 1-D array")
        out = cls(arr.shape[0])
        for i in np.flatnonzero(arr):
            out._data[int(i)] = float(arr[i])
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self.dim == other.dim and self._data == other._data

    def __hash__(self):
        raise TypeError("SparseVector is not hashable")

    def __repr__(self) -> str:
        shown = dict(sorted(self._data.items())[:6])
        tail = ", ..." if self.nnz > 6 else ""
        return f"SparseVector(dim={self.dim}, {shown}{tail})"


def check_same_dim(a: SparseVector, b: SparseVector) -> None:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} != {b.dim}")


def dot(a: SparseVector, b: SparseVector) -> float:
    check_same_dim(a, b)
    if a.nnz > b.nnz:
        a, b = b, a
    return sum(x * b.get(i) for i, x in a.items())


def cosine_similarity(a: SparseVector, b: SparseVector) -> float:
    """Cosine of the angle between a and b; 0.0 if either is zero."""
    na, nb = a.norm(), b.norm()
    if na == 0.0 or nb == 0.0:
        return 0.0
    return dot(a, b) / (na * nb)


def combine(alpha: float, a: SparseVector, beta: float, b: SparseVector) -> SparseVector:
    """alpha * a + beta * b."""
    check_same_dim(a, b)
    out = SparseVector(a.dim)
    for i, x in a.items():
        out.put(i, alpha * x)
    for i, x in b.items():
        out.put(i, out.get(i) + beta * x)
    return out


def unit_normalize(v: SparseVector) -> SparseVector:
    """Scale v to unit Euclidean length; the zero vector is returned as is."""
    n = v.norm()
    if n == 0.0:
        return SparseVector(v.dim)
    return v.scaled(1.0 / n)


def check_unit_vectors(vectors: Iterable[SparseVector], tol: float = 1e-9,
                       what: str = "vector") -> None:
    """Raise if any vector is zero or not unit-norm within tol."""
    for k, v in enumerate(vectors):
        if v.is_zero():
            raise ValueError(f"degenerate {what} (index {k}): zero vector")
        if abs(v.norm() - 1.0) > tol:
            raise ValueError(f"{what} (index {k}) is not unit-norm: ||v|| = {v.norm()!r}")
