"""Seeded random instances for every supported matroid class."""

from __future__ import annotations

import numpy as np

from .instances import IntersectionInstance, MatchingInstance
from .matroids import (
    Cographic,
    Graphic,
    Laminar,
    Matroid,
    Partition,
    Transversal,
    Uniform,
)

__all__ = [
    "MATROID_KINDS",
    "INSTANCE_KINDS",
    "ARBITRARY_KINDS",
    "random_matroid",
    "random_simple_partition",
    "random_laminar",
    "random_multigraph",
    "generate",
]

MATROID_KINDS = ("uniform", "partition", "simple-partition", "graphic", "cographic",
                 "transversal", "laminar")
ARBITRARY_KINDS = ("uniform", "partition", "graphic", "transversal", "laminar")
INSTANCE_KINDS = ("partition", "coverable-graphic", "coverable-cographic", "transversal",
                  "laminar", "matching", "rainbow")

DEFAULTS = {"n": 12, "d": 2, "k": 2, "wmax": 10}


def _split(items: list[int], parts: int, rng: np.random.Generator) -> list[list[int]]:
    """Cut ``items`` (already shuffled) into ``parts`` nonempty runs."""
    cuts = sorted(rng.choice(np.arange(1, len(items)), size=parts - 1, replace=False).tolist()) if parts > 1 else []
    bounds = [0, *cuts, len(items)]
    return [items[a:b] for a, b in zip(bounds, bounds[1:])]


def random_simple_partition(n: int, rng: np.random.Generator, blocks: int | None = None) -> Partition:
    if n == 0:
        return Partition([], n=0)
    if blocks is None:
        blocks = int(rng.integers(max(1, n // 3), n + 1))
    perm = rng.permutation(n).tolist()
    return Partition(_split(perm, min(blocks, n), rng), n=n)


def random_multigraph(num_vertices: int, num_edges: int, rng: np.random.Generator,
                      connected: bool = False, self_loops: bool = False) -> list[tuple[int, int]]:
    """
    Random multigraph edges. With ``connected`` the first ``num_vertices - 1``
    edges form a random spanning tree, which keeps bridges rare.
    """
    edges = []
    if connected:
        order = rng.permutation(num_vertices).tolist()
        for i in range(1, min(num_vertices, num_edges + 1)):
            edges.append((order[int(rng.integers(0, i))], order[i]))
    while len(edges) < num_edges:
        u, v = (int(x) for x in rng.integers(0, num_vertices, size=2))
        if u == v and not self_loops:
            continue
        edges.append((u, v))
    perm = rng.permutation(len(edges))
    return [edges[i] for i in perm]


def random_laminar(n: int, rng: np.random.Generator, k: int, levels: int = 2,
                   max_cap: int | None = None) -> Laminar:
    """
    Laminar family of the given depth: the elements are split into groups,
    each group into subgroups, and so on. Caps are drawn from ``1..max_cap``.
    """
    max_cap = k if max_cap is None else max_cap
    pairs = []
    frontier = [rng.permutation(n).tolist()]
    for _ in range(levels):
        nxt = []
        for group in frontier:
            if len(group) < 2:
                continue
            parts = int(rng.integers(2, min(len(group), 4) + 1))
            for sub in _split(group, parts, rng):
                pairs.append((sub, int(rng.integers(1, max_cap + 1))))
                nxt.append(sub)
        frontier = nxt
    return Laminar(n, pairs)


def random_matroid(kind: str, n: int, rng: np.random.Generator, k: int = 2) -> Matroid:
    """One random matroid of class ``kind`` over ``n`` elements."""
    if kind == "uniform":
        return Uniform(n, int(rng.integers(1, max(1, n) + 1)))
    if kind == "simple-partition":
        return random_simple_partition(n, rng)
    if kind == "partition":
        P = random_simple_partition(n, rng)
        caps = [int(rng.integers(1, max(1, len(b)) + 1)) for b in P.blocks]
        return Partition(P.blocks, caps, n=n)
    if kind == "graphic":
        v = int(rng.integers(2, max(3, n) + 1))
        return Graphic(v, random_multigraph(v, n, rng))
    if kind == "cographic":
        v = int(rng.integers(2, max(3, n // 2 + 2) + 1))
        return Cographic(v, random_multigraph(v, n, rng, connected=True))
    if kind == "transversal":
        right = int(rng.integers(1, max(1, n) + 1))
        adjacency = []
        for _ in range(n):
            deg = int(rng.integers(1, min(3, right) + 1))
            adjacency.append(rng.choice(right, size=deg, replace=False).tolist())
        return Transversal(adjacency, right)
    if kind == "laminar":
        return random_laminar(n, rng, k, levels=int(rng.integers(1, 4)), max_cap=max(k, 2))
    raise ValueError(f"unknown matroid kind {kind!r}; expected one of {', '.join(MATROID_KINDS)}")


def _params(params: dict | None) -> dict:
    p = dict(DEFAULTS)
    p.update(params or {})
    unknown = set(p) - {"n", "d", "k", "wmax", "vertices", "colors", "levels", "degree", "m0"}
    if unknown:
        raise ValueError(f"unknown parameters: {', '.join(sorted(unknown))}")
    if p["n"] < 1:
        raise ValueError("n must be at least 1")
    if p["d"] < 2:
        raise ValueError("d must be at least 2 (M0 plus one structured matroid)")
    if p["k"] < 1:
        raise ValueError("k must be at least 1")
    if p["wmax"] < 0:
        raise ValueError("wmax must be non-negative")
    return p


def _arbitrary(p: dict, rng: np.random.Generator) -> Matroid:
    kind = p.get("m0") or ARBITRARY_KINDS[int(rng.integers(0, len(ARBITRARY_KINDS)))]
    M = random_matroid(kind, p["n"], rng, p["k"])
    if kind == "uniform" and M.c < p["k"]:
        M = Uniform(p["n"], min(p["n"], p["k"] + int(rng.integers(0, 3))))
    return M


def generate(kind: str, params: dict | None = None, seed: int = 0):
    """
    Random instance of ``kind`` (one of ``INSTANCE_KINDS``). ``params`` may
    set ``n``, ``d``, ``k``, ``wmax`` (weights are drawn from ``0..wmax``),
    and per-kind extras: ``vertices`` (graph kinds), ``colors`` (rainbow),
    ``levels`` (laminar), ``degree`` (transversal), ``m0`` (class of the
    arbitrary matroid). The same arguments always give the same instance.
    """
    if kind not in INSTANCE_KINDS:
        raise ValueError(f"unknown instance kind {kind!r}; expected one of {', '.join(INSTANCE_KINDS)}")
    p = _params(params)
    rng = np.random.default_rng(seed)
    n, d, k = p["n"], p["d"], p["k"]
    if kind in ("matching", "rainbow"):
        v = p.get("vertices") or max(4, int(np.ceil(np.sqrt(2 * n))) + 2)
        if v < 2:
            raise ValueError("a matching instance needs at least two vertices")
        edges = random_multigraph(v, n, rng)
        if kind == "rainbow":
            colors = p.get("colors") or max(2, n // 2)
            M = random_simple_partition(n, rng, blocks=colors)
        else:
            M = _arbitrary(p, rng)
        weights = rng.integers(0, p["wmax"] + 1, size=n)
        return MatchingInstance(v, edges, M, weights, k)
    M0 = _arbitrary(p, rng)
    structured: list[Matroid] = []
    for _ in range(d - 1):
        if kind == "partition":
            structured.append(random_simple_partition(n, rng))
        elif kind == "coverable-graphic":
            v = p.get("vertices") or max(3, n // 2)
            structured.append(Graphic(v, random_multigraph(v, n, rng)))
        elif kind == "coverable-cographic":
            v = p.get("vertices") or max(3, n // 2)
            structured.append(Cographic(v, random_multigraph(v, n, rng, connected=True)))
        elif kind == "transversal":
            right = p.get("vertices") or max(2, n // 2)
            degree = p.get("degree") or 2
            adjacency = [rng.choice(right, size=int(rng.integers(1, min(degree, right) + 1)),
                                    replace=False).tolist() for _ in range(n)]
            structured.append(Transversal(adjacency, right))
        elif kind == "laminar":
            structured.append(random_laminar(n, rng, k, levels=p.get("levels") or 2))
    weights = rng.integers(0, p["wmax"] + 1, size=n)
    return IntersectionInstance([M0, *structured], weights, k)
