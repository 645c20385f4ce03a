"""
Transversal matroids via a lift to simple partition matroids.

Each element ``u`` is split into one copy per choice of an incident edge in
every bipartite graph. Copies of ``u`` are parallel in the lifted ``M0``, and
copies whose chosen edges share a right vertex collide in the lifted
partition matroid for that graph. A partition kernel on the lift, projected
back onto the original elements, is a kernel for the original instance.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .greedy import as_weights
from .matroids import Matroid, NormalizationError, Partition, SplitMatroid, Transversal
from .sampling import ClassMismatchError, Kernel, common_ground, partition_kernel

__all__ = [
    "LiftTooLargeError",
    "LiftedGroundSet",
    "Reduction",
    "build_reduction",
    "transversal_kernel",
    "partition_to_transversal",
]

DEFAULT_LIFT_CAP = 10**7


class LiftTooLargeError(ValueError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"lifted ground set would have {size} elements (cap {cap})")
        self.size = size
        self.cap = cap


@dataclass(frozen=True)
class LiftedGroundSet:
    """
    ``tuples[v] = (u, (e_1, ..., e_{d-1}))``; ``e_i`` indexes ``edges[i]``,
    the (left, right) edge list of the i-th bipartite graph.
    """

    tuples: tuple[tuple[int, tuple[int, ...]], ...]
    edges: tuple[tuple[tuple[int, int], ...], ...]

    def __len__(self):
        return len(self.tuples)

    def phi0(self, v: int) -> int:
        return self.tuples[v][0]

    def phi(self, i: int, v: int) -> int:
        """Edge id chosen by copy ``v`` in graph ``i`` (1-based, as in M1..M_{d-1})."""
        return self.tuples[v][1][i - 1]

    def project(self, copies) -> frozenset[int]:
        return frozenset(self.tuples[v][0] for v in copies)


@dataclass(frozen=True)
class Reduction:
    lifted: LiftedGroundSet
    m0: SplitMatroid
    parts: tuple[Partition, ...]
    weights: np.ndarray


def _as_transversal(M: Matroid, i: int) -> Transversal:
    if isinstance(M, Transversal):
        return M
    if isinstance(M, Partition):
        return partition_to_transversal(M)
    raise ClassMismatchError(f"structured matroid {i} is neither transversal nor partition")


def lift_size(M0: Matroid, transversals: Sequence[Transversal]) -> int:
    active = common_ground([M0, *transversals])
    return sum(int(np.prod([len(T.adjacency[u]) for T in transversals])) for u in active)


def build_reduction(M0: Matroid, transversals: Sequence[Matroid], w,
                    cap: int = DEFAULT_LIFT_CAP) -> Reduction:
    """
    Lift ``M0`` and the transversal matroids onto copies
    ``(u, e_1, ..., e_{d-1})``. Elements that are loops anywhere get no copies.
    """
    transversals = [_as_transversal(M, i) for i, M in enumerate(transversals)]
    if not transversals:
        raise ValueError("need at least one structured matroid (d >= 2)")
    w = as_weights(w, M0.n)
    size = lift_size(M0, transversals)
    if size > cap:
        raise LiftTooLargeError(size, cap)
    edges = []
    edge_id = []
    for T in transversals:
        lst, ids = [], {}
        for u, nbrs in enumerate(T.adjacency):
            for r in nbrs:
                ids[(u, r)] = len(lst)
                lst.append((u, r))
        edges.append(tuple(lst))
        edge_id.append(ids)
    active = common_ground([M0, *transversals])
    tuples = []
    for u in sorted(active):
        choices = [[edge_id[i][(u, r)] for r in T.adjacency[u]] for i, T in enumerate(transversals)]
        for combo in itertools.product(*choices):
            tuples.append((u, tuple(combo)))
    lifted = LiftedGroundSet(tuple(tuples), tuple(edges))
    m0 = SplitMatroid(M0, [u for u, _ in tuples])
    parts = []
    for i, T in enumerate(transversals):
        blocks: dict[int, list[int]] = {}
        for v, (_, combo) in enumerate(tuples):
            right = edges[i][combo[i]][1]
            blocks.setdefault(right, []).append(v)
        parts.append(Partition([blocks[r] for r in sorted(blocks)], n=len(tuples)))
    weights = w[np.array([u for u, _ in tuples], dtype=np.int64)] if tuples else np.zeros(0, np.int64)
    return Reduction(lifted, m0, tuple(parts), as_weights(weights, len(tuples)))


def transversal_kernel(M0: Matroid, transversals: Sequence[Matroid], w, k: int, seed: int = 0,
                       T: int | None = None, repeat: int = 1,
                       cap: int = DEFAULT_LIFT_CAP) -> Kernel:
    """Partition kernel on the lifted instance, projected back to original element ids."""
    red = build_reduction(M0, transversals, w, cap)
    if len(red.lifted) == 0:
        return Kernel(frozenset(), "transversal", seed, 0, (), repeat, {"lifted_size": 0})
    inner = partition_kernel(red.m0, red.parts, red.weights, k, seed, T, repeat)
    R = red.lifted.project(inner.elements)
    meta = dict(inner.meta, lifted_size=len(red.lifted), lifted_kernel_size=len(inner))
    return Kernel(R, "transversal", inner.seed, inner.rounds, inner.round_log, inner.repeat, meta)


def partition_to_transversal(P: Partition) -> Transversal:
    """
    Every element of block ``j`` becomes adjacent to the ``caps[j]`` right
    vertices reserved for block ``j``; right ids are allocated by block index.
    """
    adjacency: list[list[int]] = [[] for _ in range(P.n)]
    offset = 0
    for j, (block, c) in enumerate(zip(P.blocks, P.caps)):
        if not block:
            continue
        if c == 0:
            raise NormalizationError(f"block {j} has cap 0: elements {list(block)} are loops")
        right = list(range(offset, offset + c))
        offset += c
        for e in block:
            adjacency[e] = right
    return Transversal(adjacency, num_right=offset)
