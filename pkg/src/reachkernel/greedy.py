"""Weight-ordered greedy selection of at most ``k`` elements independent in one matroid."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .matroids import MalformedInputError, Matroid

__all__ = ["GreedyResult", "greedy", "as_weights", "weight_order"]


@dataclass(frozen=True)
class GreedyResult:
    selected: tuple[int, ...]
    pool_size: int
    queries: int


def as_weights(w, n: int) -> np.ndarray:
    """Validate a weight vector: ``n`` non-negative 64-bit integers."""
    arr = np.asarray(w)
    if arr.shape != (n,):
        raise MalformedInputError(f"expected {n} weights, got shape {arr.shape}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise MalformedInputError("weights must be integers (pre-scale rationals)")
    arr = arr.astype(np.int64)
    if np.any(arr < 0):
        raise MalformedInputError("weights must be non-negative")
    arr.setflags(write=False)
    return arr


def weight_order(elements: Iterable[int], w: Sequence[int]) -> list[int]:
    """Elements by non-increasing weight, ties by ascending id."""
    return sorted(elements, key=lambda e: (-int(w[e]), e))


def _greedy_sorted(M: Matroid, ordered: Iterable[int], k: int) -> tuple[list[int], int]:
    selected: list[int] = []
    queries = 0
    indep = M._indep
    for f in ordered:
        if len(selected) >= k:
            break
        queries += 1
        if indep(selected + [f]):
            selected.append(f)
    return selected, queries


def greedy(M0: Matroid, F: Iterable[int], k: int, w) -> GreedyResult:
    """
    Scan ``F`` by (weight descending, id ascending) and keep each element that
    leaves the selection independent in ``M0`` with at most ``k`` members.
    """
    if k < 1:
        raise ValueError("k must be positive")
    F = M0._check_subset(F)
    selected, queries = _greedy_sorted(M0, weight_order(F, w), k)
    return GreedyResult(tuple(selected), len(F), queries)
