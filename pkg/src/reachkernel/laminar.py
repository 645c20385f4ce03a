"""
Laminar matroids: recursive candidate sampling over the laminar tree and the
kernel driver built on it.
"""

from __future__ import annotations

import itertools
import math
import warnings
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ._rng import RoundStreams, check_seed
from .greedy import _greedy_sorted, as_weights, weight_order
from .matroids import Laminar, LaminarFamily, Matroid, NormalizationError
from .sampling import ClassMismatchError, Kernel, best_singleton, common_ground

__all__ = [
    "NormalizationWarning",
    "DisjointFamily",
    "normalize_laminar",
    "refine",
    "find_candidate",
    "candidate_bound",
    "default_rounds_laminar",
    "laminar_kernel",
]


class NormalizationWarning(UserWarning):
    pass


def normalize_laminar(L: LaminarFamily, k: int, ground=None, strict: bool = False) -> LaminarFamily:
    """
    Bring ``L`` to the form the candidate sampler assumes: the root is the
    whole ground set with cap ``k``, every singleton is present with cap 1,
    no cap exceeds ``k``, and caps never decrease from a set to its supersets
    (a set with a larger cap than some superset is redundant and dropped).

    Elements of cap-0 sets are loops; they are removed (with a warning), or
    rejected when ``strict``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    loops = set()
    for A, c in zip(L.sets, L.caps):
        if c == 0:
            loops |= A
    ground = frozenset(range(L.n)) if ground is None else frozenset(ground)
    dropped = loops & ground
    ground = ground - loops
    if dropped:
        if strict:
            raise NormalizationError(f"cap-0 sets make elements {sorted(dropped)} loops")
        warnings.warn(f"removed loop elements {sorted(dropped)}", NormalizationWarning, stacklevel=2)
    pairs = []
    for A, c in zip(L.sets, L.caps):
        A = A & ground
        if A and len(A) > 1:
            pairs.append((A, min(c, k)))
    if ground:
        pairs.append((ground, k))
    pairs.extend((frozenset([e]), 1) for e in ground)
    fam = LaminarFamily(L.n, pairs)
    keep = []
    for i, (A, c) in enumerate(zip(fam.sets, fam.caps)):
        node, smallest_above = fam.parent[i], math.inf
        while node != -1:
            smallest_above = min(smallest_above, fam.caps[node])
            node = fam.parent[node]
        if c <= smallest_above:
            keep.append((A, c))
    return LaminarFamily(L.n, keep)


@dataclass(frozen=True)
class DisjointFamily:
    """Mutually disjoint members of a laminar family, referenced by node index."""

    family: LaminarFamily
    members: tuple[int, ...]

    @property
    def height(self) -> int:
        return max((self.family.caps[m] for m in self.members), default=0)

    def elements(self) -> frozenset[int]:
        sets = self.family.sets
        return frozenset().union(*(sets[m] for m in self.members)) if self.members else frozenset()

    def __len__(self):
        return len(self.members)


def refine(Z: DisjointFamily, i: int) -> DisjointFamily:
    """Maximal stored sets inside members of ``Z`` whose cap is at most ``i``."""
    if i < 1:
        raise ValueError("refinement level must be at least 1")
    fam = Z.family
    out = []
    stack = list(reversed(Z.members))
    while stack:
        node = stack.pop()
        if fam.caps[node] <= i:
            out.append(node)
        else:
            stack.extend(reversed(fam.children[node]))
    return DisjointFamily(fam, tuple(out))


def candidate_bound(k: int, h: int) -> int:
    """Upper bound ``k^ceil(log2 h)`` on the size of a candidate family."""
    return k ** math.ceil(math.log2(h)) if h > 1 else 1


def find_candidate(Z: DisjointFamily, k: int, rng: np.random.Generator) -> list[frozenset[int]]:
    """
    Sample a family of candidate sets, one of which is exchangeable for any
    fixed (X, x) with the probability the kernel's round count accounts for.

    Height 1 returns ``[E(Z)]``. Otherwise, for each level ``i`` from
    ``ceil(h/2)`` to ``h-1``: keep members of the level-``i`` refinement with
    probability ``1/k``, refine the survivors to level ``h-i``, keep those
    with probability ``1/k``, and recurse on what is left.
    """
    h = Z.height
    if h <= 1:
        return [Z.elements()] if Z.members else []
    out: dict[frozenset[int], None] = {}
    p = 1.0 / k
    for i in range(math.ceil(h / 2), h):
        level = refine(Z, i)
        kept = rng.random(len(level.members)) < p
        first = DisjointFamily(Z.family, tuple(m for m, keep in zip(level.members, kept) if keep))
        level = refine(first, h - i)
        kept = rng.random(len(level.members)) < p
        second = DisjointFamily(Z.family, tuple(m for m, keep in zip(level.members, kept) if keep))
        if second.members:
            for Y in find_candidate(second, k, rng):
                out[Y] = None
    return list(out)


def default_rounds_laminar(k: int, d: int) -> int:
    """
    ``ceil(ln(3k) / p^(d-1))`` with per-matroid success probability
    ``p = (e k)^(-2 ceil(log2 k))``.
    """
    if d < 2:
        raise ValueError("need at least one structured matroid (d >= 2)")
    if k < 2:
        raise ValueError("k < 2: use the k = 1 shortcut instead of sampling rounds")
    levels = math.ceil(math.log2(k))
    log_t = math.log(math.log(3 * k)) + 2 * levels * (d - 1) * math.log(math.e * k)
    if log_t > 60 * math.log(2):
        raise OverflowError(f"default round count ~e^{log_t:.1f} is too large; pass T explicitly")
    return math.ceil(math.log(3 * k) * (math.e * k) ** (2 * levels * (d - 1)))


def laminar_kernel(M0: Matroid, laminars: Sequence[Laminar], w, k: int, seed: int = 0,
                   T: int | None = None, repeat: int = 1) -> Kernel:
    """
    Per round, sample a candidate family for each laminar matroid, intersect
    one member of each family in every combination, and add the greedy
    output of ``M0`` on each intersection.
    """
    seed = check_seed(seed)
    if k < 1:
        raise ValueError("k must be positive")
    if not laminars:
        raise ValueError("need at least one structured matroid (d >= 2)")
    for i, L in enumerate(laminars):
        if not isinstance(L, Laminar):
            raise ClassMismatchError(f"structured matroid {i} is not laminar")
    if repeat < 1:
        raise ValueError("repeat must be at least 1")
    w = as_weights(w, M0.n)
    active = common_ground([M0, *laminars])
    d = len(laminars) + 1
    meta = {"d": d, "k": k}
    if k == 1:
        return Kernel(best_singleton(active, w), "laminar", seed, 0, (), repeat,
                      dict(meta, shortcut="k=1"))
    if T is None:
        T = default_rounds_laminar(k, d)
    families = [normalize_laminar(L.family, k, L.ground, strict=False) for L in laminars]
    roots = [DisjointFamily(fam, fam.roots) for fam in families]
    order = weight_order(active, w)
    elements: set[int] = set()
    log: list[int] = []
    max_family = 0
    for rep in range(repeat):
        streams = RoundStreams(seed, rep)
        for t in range(T):
            cands = [find_candidate(Z, k, streams.get(t, i)) for i, Z in enumerate(roots)]
            max_family = max(max_family, math.prod(len(c) for c in cands))
            seen: set[frozenset[int]] = set()
            picked: set[int] = set()
            for combo in itertools.product(*cands):
                Y = frozenset.intersection(*combo) & active
                if Y in seen:
                    continue
                seen.add(Y)
                selected, _ = _greedy_sorted(M0, [e for e in order if e in Y], k)
                picked.update(selected)
            elements |= picked
            log.append(len(picked))
    meta["max_intersections"] = max_family
    return Kernel(frozenset(elements), "laminar", seed, T, tuple(log), repeat, meta)
