"""Deterministic reachable kernel for two matroids, one of them g(k)-coverable."""

from __future__ import annotations

from .greedy import _greedy_sorted, as_weights, weight_order
from .matroids import Matroid
from .sampling import CoverabilityError, Kernel, common_ground, coverability_profile

__all__ = ["deterministic_kernel"]


def deterministic_kernel(M0: Matroid, M1: Matroid, w, k: int, g: int | None = None) -> Kernel:
    """
    Repeat ``g + 1`` times on the shrinking pool ``U``: take the greedy set
    ``F`` of ``M0`` (truncated to rank ``k``) on ``U``; for each ``e`` in
    ``F`` also take the greedy set inside the ``M1``-span of ``e``; then drop
    those spans from ``U``. The result has at most ``k^2 (g + 1)`` elements.

    ``meta["iterations"]`` records ``F`` and the removed spans per iteration.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if g is None:
        g = coverability_profile(M1).g(k)
    if g < k:
        raise CoverabilityError(f"coverability bound g(k) = {g} is below k = {k}")
    w = as_weights(w, M0.n)
    M0k = M0.truncate(k)
    U = set(common_ground([M0, M1]))
    R: set[int] = set()
    log, iterations = [], []
    for _ in range(g + 1):
        if not U:
            break
        M0U = M0k.restrict(U)
        M1U = M1.restrict(U)
        F, _ = _greedy_sorted(M0U, weight_order(U, w), k)
        added = set(F)
        spans = {}
        for e in F:
            S = M1U.span([e])
            spans[e] = S
            H, _ = _greedy_sorted(M0U, weight_order(S, w), k)
            added.update(H)
        R |= added
        log.append(len(added))
        iterations.append({"F": tuple(F), "spans": spans})
        for S in spans.values():
            U -= S
    return Kernel(frozenset(R), "deterministic", 0, g + 1, tuple(log), 1,
                  {"k": k, "g": g, "iterations": tuple(iterations)})
