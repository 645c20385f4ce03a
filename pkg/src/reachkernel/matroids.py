"""
Matroids over dense element ids ``0..n-1``, each given by an independence oracle.

Every class normalizes away its loops at construction: an element whose
singleton is dependent is recorded in ``loops`` and excluded from ``ground``.
Queries on a loop simply answer "dependent".
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Callable, Iterable, Sequence

__all__ = [
    "MalformedInputError",
    "NormalizationError",
    "GroundSetTooLargeError",
    "Matroid",
    "Uniform",
    "Partition",
    "Graphic",
    "Cographic",
    "Transversal",
    "Laminar",
    "LaminarFamily",
    "Restriction",
    "Truncation",
    "OracleMatroid",
    "SplitMatroid",
    "CountingMatroid",
    "check_matroid_axioms",
]


class MalformedInputError(ValueError):
    """An element id or descriptor parameter is out of range or inconsistent."""


class NormalizationError(ValueError):
    """Raised when loops are found where the caller asked for strictness."""


class GroundSetTooLargeError(ValueError):
    """Refusal of an exponential-time utility."""


class DisjointSet:
    """Union-find over arbitrary hashable keys, created lazily."""

    __slots__ = ("parent",)

    def __init__(self):
        self.parent = {}

    def find(self, x):
        parent = self.parent
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while x != root:
            nxt = parent.get(x, x)
            parent[x] = root
            x = nxt
        return root

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[rx] = ry
        return True


def _as_tuple(S: Iterable[int], n: int) -> tuple[int, ...]:
    out = tuple(S)
    for e in out:
        if not isinstance(e, (int,)) and not hasattr(e, "__index__"):
            raise MalformedInputError(f"element id {e!r} is not an integer")
        if e < 0 or e >= n:
            raise MalformedInputError(f"element id {e} out of range 0..{n - 1}")
    if len(set(out)) != len(out):
        raise MalformedInputError(f"duplicate element ids in {sorted(out)}")
    return tuple(int(e) for e in out)


class Matroid:
    """
    Base class. Subclasses implement ``_raw_independent`` on a tuple of
    distinct in-range ids and call ``_setup`` at the end of ``__init__``.
    """

    kind = "matroid"
    _frozen = False

    def _setup(self, n: int, universe: Iterable[int] | None = None):
        self.n = n
        universe = frozenset(range(n)) if universe is None else frozenset(universe)
        self.universe = universe
        self.loops = frozenset(e for e in universe if not self._raw_independent((e,)))
        self.ground = universe - self.loops
        self._frozen = True

    def __setattr__(self, name, value):
        if self._frozen:
            raise AttributeError(f"{type(self).__name__} is immutable")
        object.__setattr__(self, name, value)

    def _raw_independent(self, S: tuple[int, ...]) -> bool:
        raise NotImplementedError

    # -- oracle --------------------------------------------------------

    def _indep(self, S: Sequence[int]) -> bool:
        """Unchecked fast path: ``S`` holds distinct ids from ``universe``."""
        ground = self.ground
        for e in S:
            if e not in ground:
                return False
        return self._raw_independent(tuple(S))

    def is_independent(self, S: Iterable[int]) -> bool:
        S = _as_tuple(S, self.n)
        for e in S:
            if e not in self.universe:
                raise MalformedInputError(f"element {e} is outside this matroid's ground set")
        return self._indep(S)

    def _check_subset(self, S: Iterable[int]) -> tuple[int, ...]:
        S = _as_tuple(S, self.n)
        for e in S:
            if e not in self.universe:
                raise MalformedInputError(f"element {e} is outside this matroid's ground set")
        return S

    # -- derived queries ------------------------------------------------

    def basis_of(self, S: Iterable[int]) -> tuple[int, ...]:
        """Greedy maximal independent subset of ``S`` (scanned in id order)."""
        S = self._check_subset(S)
        basis: list[int] = []
        for e in sorted(S):
            if e in self.ground and self._raw_independent(tuple(basis) + (e,)):
                basis.append(e)
        return tuple(basis)

    def rank(self, S: Iterable[int] | None = None) -> int:
        if S is None:
            S = self.ground
        return len(self.basis_of(S))

    def span(self, S: Iterable[int]) -> frozenset[int]:
        S = frozenset(self._check_subset(S))
        basis = self.basis_of(S)
        out = set(S & self.ground)
        for e in self.ground - S:
            if not self._raw_independent(basis + (e,)):
                out.add(e)
        return frozenset(out)

    def parallel_classes(self) -> tuple[tuple[int, ...], ...]:
        """Parallel classes of the ground set, each sorted, ordered by minimum id."""
        assigned: set[int] = set()
        classes = []
        order = sorted(self.ground)
        for i, e in enumerate(order):
            if e in assigned:
                continue
            cls = [e]
            assigned.add(e)
            for f in order[i + 1:]:
                if f not in assigned and not self._raw_independent((e, f)):
                    cls.append(f)
                    assigned.add(f)
            classes.append(tuple(cls))
        return tuple(classes)

    def parallel_representatives(self) -> frozenset[int]:
        return frozenset(cls[0] for cls in self.parallel_classes())

    def restrict(self, U: Iterable[int]) -> "Restriction":
        return Restriction(self, U)

    def truncate(self, k: int) -> "Truncation":
        return Truncation(self, k)

    # -- descriptors ------------------------------------------------------

    def descriptor(self) -> dict:
        raise NotImplementedError(f"{type(self).__name__} has no serializable descriptor")

    def __eq__(self, other):
        if not isinstance(other, Matroid) or type(self) is not type(other):
            return NotImplemented
        try:
            return self.descriptor() == other.descriptor()
        except NotImplementedError:
            return self is other

    def __hash__(self):
        try:
            return hash((type(self).__name__, json.dumps(self.descriptor(), sort_keys=True)))
        except NotImplementedError:
            return id(self)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, rank={self.rank()})"


class Uniform(Matroid):
    kind = "uniform"

    def __init__(self, n: int, rank: int):
        if n < 0 or rank < 0:
            raise MalformedInputError("uniform matroid needs n >= 0 and rank >= 0")
        self.c = int(rank)
        self._setup(int(n))

    def _raw_independent(self, S):
        return len(S) <= self.c

    def descriptor(self):
        return {"type": "uniform", "n": self.n, "rank": self.c}


class Partition(Matroid):
    """
    Partition matroid; ``blocks`` must cover ``range(n)`` disjointly.
    Blocks are stored sorted by minimum element (empty blocks last).
    """

    kind = "partition"

    def __init__(self, blocks: Iterable[Iterable[int]], caps: Sequence[int] | None = None,
                 n: int | None = None):
        blocks = [tuple(sorted(int(e) for e in b)) for b in blocks]
        caps = [1] * len(blocks) if caps is None else [int(c) for c in caps]
        if len(caps) != len(blocks):
            raise MalformedInputError("partition needs one cap per block")
        if any(c < 0 for c in caps):
            raise MalformedInputError("partition caps must be non-negative")
        total = sum(len(b) for b in blocks)
        n = total if n is None else int(n)
        block_of = [-1] * n
        for j, b in enumerate(blocks):
            for e in b:
                if e < 0 or e >= n:
                    raise MalformedInputError(f"partition element {e} out of range 0..{n - 1}")
                if block_of[e] != -1:
                    raise MalformedInputError(f"element {e} appears in more than one block")
                block_of[e] = j
        if -1 in block_of:
            raise MalformedInputError(f"partition blocks do not cover element {block_of.index(-1)}")
        order = sorted(range(len(blocks)), key=lambda j: (blocks[j][0] if blocks[j] else n, j))
        self.blocks = tuple(blocks[j] for j in order)
        self.caps = tuple(caps[j] for j in order)
        remap = {old: new for new, old in enumerate(order)}
        self.block_of = tuple(remap[j] for j in block_of)
        self._setup(n)

    @property
    def is_simple(self) -> bool:
        return all(c == 1 for c in self.caps)

    def _raw_independent(self, S):
        counts: dict[int, int] = {}
        caps, block_of = self.caps, self.block_of
        for e in S:
            j = block_of[e]
            c = counts.get(j, 0) + 1
            if c > caps[j]:
                return False
            counts[j] = c
        return True

    def descriptor(self):
        return {"type": "partition", "n": self.n,
                "blocks": [list(b) for b in self.blocks], "caps": list(self.caps)}


def _check_edges(num_vertices: int, edges) -> tuple[tuple[int, int], ...]:
    out = []
    for i, edge in enumerate(edges):
        u, v = (int(x) for x in edge)
        if not (0 <= u < num_vertices and 0 <= v < num_vertices):
            raise MalformedInputError(f"edge {i} = ({u}, {v}) uses a vertex outside 0..{num_vertices - 1}")
        out.append((u, v))
    return tuple(out)


class Graphic(Matroid):
    """Cycle matroid of a multigraph; element ``i`` is edge ``edges[i]``."""

    kind = "graphic"

    def __init__(self, num_vertices: int, edges: Iterable[Sequence[int]]):
        self.num_vertices = int(num_vertices)
        self.edges = _check_edges(self.num_vertices, edges)
        self._setup(len(self.edges))

    def _raw_independent(self, S):
        dsu = DisjointSet()
        edges = self.edges
        for e in S:
            u, v = edges[e]
            if not dsu.union(u, v):
                return False
        return True

    def descriptor(self):
        return {"type": "graphic", "vertices": self.num_vertices,
                "edges": [list(e) for e in self.edges]}


class Cographic(Matroid):
    """Bond matroid: ``S`` is independent iff deleting it keeps the component count."""

    kind = "cographic"

    def __init__(self, num_vertices: int, edges: Iterable[Sequence[int]]):
        self.num_vertices = int(num_vertices)
        self.edges = _check_edges(self.num_vertices, edges)
        self.base_components = self._components(())
        self._setup(len(self.edges))

    def _components(self, removed) -> int:
        removed = set(removed)
        dsu = DisjointSet()
        count = self.num_vertices
        for i, (u, v) in enumerate(self.edges):
            if i not in removed and dsu.union(u, v):
                count -= 1
        return count

    def _raw_independent(self, S):
        return self._components(S) == self.base_components

    def descriptor(self):
        return {"type": "cographic", "vertices": self.num_vertices,
                "edges": [list(e) for e in self.edges]}


class Transversal(Matroid):
    """
    Transversal matroid of a bipartite graph. ``adjacency[u]`` lists the
    right vertices adjacent to left vertex (element) ``u``.
    """

    kind = "transversal"

    def __init__(self, adjacency: Iterable[Iterable[int]], num_right: int | None = None):
        adjacency = tuple(tuple(sorted(set(int(w) for w in nbrs))) for nbrs in adjacency)
        top = max((max(a) for a in adjacency if a), default=-1)
        self.num_right = top + 1 if num_right is None else int(num_right)
        for u, nbrs in enumerate(adjacency):
            for w in nbrs:
                if w < 0 or w >= self.num_right:
                    raise MalformedInputError(f"element {u} adjacent to right vertex {w} outside 0..{self.num_right - 1}")
        self.adjacency = adjacency
        self._setup(len(adjacency))

    def _raw_independent(self, S):
        # Kuhn's augmenting paths, restricted to the left vertices in S.
        adjacency = self.adjacency
        match_right: dict[int, int] = {}

        def augment(u, seen):
            for w in adjacency[u]:
                if w in seen:
                    continue
                seen.add(w)
                if w not in match_right or augment(match_right[w], seen):
                    match_right[w] = u
                    return True
            return False

        for u in S:
            if not augment(u, set()):
                return False
        return True

    def descriptor(self):
        return {"type": "transversal", "right": self.num_right,
                "adjacency": [list(a) for a in self.adjacency]}


class LaminarFamily:
    """
    Capacity-labelled laminar family stored as a rooted forest.

    Nodes are indexed ``0..m-1`` in canonical order: larger sets first, ties
    broken by minimum element. ``parent[i]`` is the smallest stored set
    strictly containing set ``i`` (or -1); ``children[i]`` is sorted by
    minimum element. Repeated sets are merged keeping the smaller cap.
    """

    def __init__(self, n: int, sets: Iterable[tuple[Iterable[int], int]]):
        self.n = int(n)
        merged: dict[frozenset, int] = {}
        for elems, cap in sets:
            A = frozenset(int(e) for e in elems)
            cap = int(cap)
            if cap < 0:
                raise MalformedInputError("laminar caps must be non-negative")
            for e in A:
                if e < 0 or e >= self.n:
                    raise MalformedInputError(f"laminar element {e} out of range 0..{self.n - 1}")
            if not A:
                continue
            merged[A] = min(cap, merged.get(A, cap))
        order = sorted(merged, key=lambda A: (-len(A), min(A), sorted(A)))
        self.sets = tuple(order)
        self.caps = tuple(merged[A] for A in order)
        parent = [-1] * len(order)
        owner: dict[int, int] = {}
        for i, A in enumerate(order):
            owners = {owner.get(e, -1) for e in A}
            if len(owners) != 1:
                raise MalformedInputError(
                    f"sets {sorted(A)} and an earlier set overlap without nesting")
            parent[i] = owners.pop()
            for e in A:
                owner[e] = i
        self.parent = tuple(parent)
        children: list[list[int]] = [[] for _ in order]
        for i, p in enumerate(parent):
            if p != -1:
                children[p].append(i)
        self.children = tuple(tuple(sorted(ch, key=lambda j: min(order[j]))) for ch in children)
        self.roots = tuple(sorted((i for i, p in enumerate(parent) if p == -1),
                                  key=lambda j: min(order[j])))
        chains: list[tuple[int, ...]] = []
        for e in range(self.n):
            chain = []
            node = owner.get(e, -1)
            while node != -1:
                chain.append(node)
                node = parent[node]
            chains.append(tuple(chain))
        # chain[e]: stored sets containing e, innermost first
        self.chain = tuple(chains)

    def __len__(self):
        return len(self.sets)

    def ancestors(self, node: int) -> Iterable[int]:
        """``node`` itself followed by every stored superset."""
        while node != -1:
            yield node
            node = self.parent[node]

    def elements(self) -> frozenset[int]:
        return frozenset().union(*self.sets) if self.sets else frozenset()

    def as_pairs(self) -> list[tuple[list[int], int]]:
        return [(sorted(A), c) for A, c in zip(self.sets, self.caps)]

    def __eq__(self, other):
        if not isinstance(other, LaminarFamily):
            return NotImplemented
        return self.n == other.n and self.sets == other.sets and self.caps == other.caps

    def __repr__(self):
        return f"LaminarFamily(n={self.n}, sets={len(self.sets)})"


class Laminar(Matroid):
    kind = "laminar"

    def __init__(self, n: int, family: LaminarFamily | Iterable[tuple[Iterable[int], int]]):
        if not isinstance(family, LaminarFamily):
            family = LaminarFamily(n, family)
        if family.n != n:
            raise MalformedInputError("laminar family built over a different ground set size")
        self.family = family
        self._setup(int(n))

    def _raw_independent(self, S):
        counts: dict[int, int] = {}
        chain, caps = self.family.chain, self.family.caps
        for e in S:
            for node in chain[e]:
                c = counts.get(node, 0) + 1
                if c > caps[node]:
                    return False
                counts[node] = c
        return True

    def descriptor(self):
        return {"type": "laminar", "n": self.n,
                "sets": [{"elements": sorted(A), "cap": c}
                         for A, c in zip(self.family.sets, self.family.caps)]}


class Restriction(Matroid):
    kind = "restriction"

    def __init__(self, inner: Matroid, subset: Iterable[int]):
        subset = frozenset(int(e) for e in subset)
        for e in subset:
            if e not in inner.universe:
                raise MalformedInputError(f"restriction element {e} outside the inner ground set")
        self.inner = inner
        self.subset = subset
        self._setup(inner.n, subset)

    def _raw_independent(self, S):
        return self.inner._indep(S)

    def descriptor(self):
        return {"type": "restriction", "subset": sorted(self.subset),
                "inner": self.inner.descriptor()}


class Truncation(Matroid):
    kind = "truncation"

    def __init__(self, inner: Matroid, bound: int):
        if bound < 1:
            raise MalformedInputError("truncation bound must be at least 1")
        self.inner = inner
        self.bound = int(bound)
        self._setup(inner.n, inner.universe)

    def _raw_independent(self, S):
        return len(S) <= self.bound and self.inner._indep(S)

    def descriptor(self):
        return {"type": "truncation", "bound": self.bound, "inner": self.inner.descriptor()}


class OracleMatroid(Matroid):
    """Wraps a user-supplied independence predicate over ``range(n)``."""

    kind = "oracle"

    def __init__(self, n: int, oracle: Callable[[frozenset[int]], bool]):
        self.oracle = oracle
        self._setup(int(n))

    @classmethod
    def from_family(cls, n: int, family: Iterable[Iterable[int]]) -> "OracleMatroid":
        members = frozenset(frozenset(X) for X in family)
        return cls(n, lambda S: frozenset(S) in members)

    def _raw_independent(self, S):
        return bool(self.oracle(frozenset(S)))


class SplitMatroid(Matroid):
    """
    Matroid on copies of elements: ``S`` is independent iff the images
    ``image[s]`` are pairwise distinct and independent in ``inner``.
    """

    kind = "split"

    def __init__(self, inner: Matroid, image: Sequence[int]):
        self.inner = inner
        self.image = tuple(int(u) for u in image)
        self._setup(len(self.image))

    def _raw_independent(self, S):
        imgs = [self.image[s] for s in S]
        if len(set(imgs)) != len(imgs):
            return False
        return self.inner._indep(imgs)


class CountingMatroid(Matroid):
    """Delegating wrapper that counts independence-oracle calls on the inner matroid."""

    kind = "counting"

    def __init__(self, inner: Matroid):
        self.inner = inner
        self._setup(inner.n, inner.universe)
        object.__setattr__(self, "calls", 0)

    def _raw_independent(self, S):
        object.__setattr__(self, "calls", getattr(self, "calls", 0) + 1)
        return self.inner._indep(S)

    def reset(self):
        object.__setattr__(self, "calls", 0)


def check_matroid_axioms(M: Matroid, max_elements: int = 16) -> bool:
    """
    Exhaustively test the independence axioms on the raw oracle over ``M.universe``.

    Loops are not filtered out here, so a family that is not downward closed
    is reported even if it would otherwise be normalized.
    """
    elems = sorted(M.universe)
    m = len(elems)
    if m > max_elements:
        raise GroundSetTooLargeError(f"{m} elements exceeds the exhaustive limit of {max_elements}")
    indep = set()
    for mask in range(1 << m):
        S = tuple(elems[i] for i in range(m) if mask >> i & 1)
        if M._raw_independent(S):
            indep.add(mask)
    if 0 not in indep:
        return False
    for X in indep:
        bits = X
        while bits:
            low = bits & -bits
            if X ^ low not in indep:
                return False
            bits ^= low
    # with downward closure, exchange for |X| = |Y| + 1 implies the general axiom
    by_size: dict[int, list[int]] = {}
    for X in indep:
        by_size.setdefault(bin(X).count("1"), []).append(X)
    for size, Ys in by_size.items():
        for X in by_size.get(size + 1, ()):
            for Y in Ys:
                diff = X & ~Y
                ok = False
                while diff:
                    low = diff & -diff
                    if Y | low in indep:
                        ok = True
                        break
                    diff ^= low
                if not ok:
                    return False
    return True


def subsets_up_to(elements: Iterable[int], size: int) -> Iterable[tuple[int, ...]]:
    elements = sorted(elements)
    for r in range(size + 1):
        yield from itertools.combinations(elements, r)
