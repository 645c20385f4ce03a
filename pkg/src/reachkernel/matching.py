"""Reachable kernel for maximum-weight matching under a matroid constraint."""

from __future__ import annotations

import math

import numpy as np

from ._rng import check_seed
from .greedy import weight_order
from .instances import MatchingInstance
from .sampling import Kernel, _run_rounds, best_singleton

__all__ = ["MatchingInstance", "default_rounds_matching", "matching_kernel", "induced_edges"]


def default_rounds_matching(k: int) -> int:
    """``ceil(4 e k^2 ln(3k))``."""
    if k < 2:
        raise ValueError("k < 2: use the k = 1 shortcut instead of sampling rounds")
    return math.ceil(4 * math.e * k * k * math.log(3 * k))


def induced_edges(inst: MatchingInstance, vertices) -> frozenset[int]:
    """Edges with both endpoints in ``vertices``."""
    vertices = set(vertices)
    return frozenset(i for i, (u, v) in enumerate(inst.edges) if u in vertices and v in vertices)


def matching_kernel(inst: MatchingInstance, seed: int = 0, T: int | None = None,
                    repeat: int = 1) -> Kernel:
    """
    Per round, keep each vertex with probability ``1/(2k)`` and run greedy on
    the matroid over the edges induced by the kept vertices.
    """
    seed = check_seed(seed)
    k = inst.k
    active = inst.ground
    meta = {"k": k}
    if k == 1:
        return Kernel(best_singleton(active, inst.weights), "matching", seed, 0, (), repeat,
                      dict(meta, shortcut="k=1"))
    if T is None:
        T = default_rounds_matching(k)
    ends = np.array(inst.edges, dtype=np.int64).reshape(-1, 2)
    tail, head = ends[:, 0], ends[:, 1]
    base = np.zeros(inst.n, dtype=bool)
    base[list(active)] = True
    p = 1.0 / (2 * k)

    def sample(streams, t):
        kept = streams.get(t, 0).random(inst.num_vertices) < p
        return base & kept[tail] & kept[head]

    return _run_rounds("matching", inst.matroid, inst.weights, k, T, active, seed, repeat,
                       sample, meta)
