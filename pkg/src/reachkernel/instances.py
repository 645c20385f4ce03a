"""Problem instances: d-matroid intersection, and matching under a matroid constraint."""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

from .greedy import as_weights
from .matroids import MalformedInputError, Matroid

__all__ = ["IntersectionInstance", "MatchingInstance"]


class IntersectionInstance:
    """
    ``matroids[0]`` is the arbitrary matroid M0; the rest are the structured
    ones. Feasible sets are the common independent sets.
    """

    kind = "intersection"

    def __init__(self, matroids: Sequence[Matroid], weights, k: int):
        if not matroids:
            raise MalformedInputError("an instance needs at least one matroid")
        n = matroids[0].n
        for i, M in enumerate(matroids):
            if M.n != n:
                raise MalformedInputError(f"matroid {i} has {M.n} elements, expected {n}")
        if k < 1:
            raise MalformedInputError("k must be positive")
        self.matroids = tuple(matroids)
        self.n = n
        self.k = int(k)
        self.weights = as_weights(weights, n)
        ground = frozenset(range(n))
        for M in self.matroids:
            ground &= M.ground
        self.ground = ground

    @property
    def d(self) -> int:
        return len(self.matroids)

    @property
    def m0(self) -> Matroid:
        return self.matroids[0]

    @property
    def structured(self) -> tuple[Matroid, ...]:
        return self.matroids[1:]

    def is_feasible(self, S: Iterable[int]) -> bool:
        S = tuple(S)
        return all(M._indep(S) for M in self.matroids)

    def with_k(self, k: int) -> "IntersectionInstance":
        return IntersectionInstance(self.matroids, self.weights, k)

    def __eq__(self, other):
        if not isinstance(other, IntersectionInstance):
            return NotImplemented
        return (self.k == other.k and self.matroids == other.matroids
                and np.array_equal(self.weights, other.weights))

    __hash__ = None

    def __repr__(self):
        kinds = ", ".join(M.kind for M in self.matroids)
        return f"IntersectionInstance(n={self.n}, k={self.k}, matroids=[{kinds}])"


class MatchingInstance:
    """
    Graph ``(num_vertices, edges)`` whose edges are the elements, with a
    matroid over the edges. Feasible sets are matchings independent in the matroid.
    """

    kind = "matching"

    def __init__(self, num_vertices: int, edges: Iterable[Sequence[int]], matroid: Matroid,
                 weights, k: int):
        self.num_vertices = int(num_vertices)
        out = []
        for i, edge in enumerate(edges):
            u, v = (int(x) for x in edge)
            if u == v:
                raise MalformedInputError(f"edge {i} is a self-loop at vertex {u}")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise MalformedInputError(f"edge {i} = ({u}, {v}) uses a vertex outside the graph")
            out.append((u, v))
        self.edges = tuple(out)
        if matroid.n != len(self.edges):
            raise MalformedInputError(f"matroid has {matroid.n} elements but the graph has {len(self.edges)} edges")
        if k < 1:
            raise MalformedInputError("k must be positive")
        self.matroid = matroid
        self.n = len(self.edges)
        self.k = int(k)
        self.weights = as_weights(weights, self.n)
        self.ground = matroid.ground

    @property
    def matroids(self) -> tuple[Matroid, ...]:
        return (self.matroid,)

    def is_matching(self, S: Iterable[int]) -> bool:
        seen = set()
        for e in S:
            u, v = self.edges[e]
            if u in seen or v in seen:
                return False
            seen.add(u)
            seen.add(v)
        return True

    def is_feasible(self, S: Iterable[int]) -> bool:
        S = tuple(S)
        return self.is_matching(S) and self.matroid._indep(S)

    def with_k(self, k: int) -> "MatchingInstance":
        return MatchingInstance(self.num_vertices, self.edges, self.matroid, self.weights, k)

    def __eq__(self, other):
        if not isinstance(other, MatchingInstance):
            return NotImplemented
        return (self.k == other.k and self.num_vertices == other.num_vertices
                and self.edges == other.edges and self.matroid == other.matroid
                and np.array_equal(self.weights, other.weights))

    __hash__ = None

    def __repr__(self):
        return (f"MatchingInstance(vertices={self.num_vertices}, edges={self.n}, "
                f"k={self.k}, matroid={self.matroid.kind})")
