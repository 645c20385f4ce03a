"""
Round-based sampling kernels: simple partition matroids and g(k)-coverable matroids.

Each round samples, independently for every structured matroid, a union of
parallel classes (blocks, for a simple partition matroid), intersects the
samples, and keeps the greedy top-``k`` independent set of ``M0`` inside the
intersection. The kernel is the union over rounds.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from ._rng import RoundStreams, check_seed
from .greedy import _greedy_sorted, as_weights, weight_order
from .matroids import Cographic, Graphic, Matroid, Partition

__all__ = [
    "Kernel",
    "ClassMismatchError",
    "CoverabilityError",
    "CoverabilityProfile",
    "default_rounds_partition",
    "default_rounds_coverable",
    "g_value",
    "coverability_profile",
    "partition_kernel",
    "coverable_kernel",
    "best_singleton",
]


class ClassMismatchError(TypeError):
    """A structured matroid is not of the class the algorithm requires."""


class CoverabilityError(ValueError):
    """A coverability bound g(k) smaller than k was supplied."""


@dataclass(frozen=True)
class Kernel:
    elements: frozenset[int]
    algorithm: str
    seed: int
    rounds: int
    round_log: tuple[int, ...] = ()
    repeat: int = 1
    meta: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, e):
        return e in self.elements

    def sorted(self) -> list[int]:
        return sorted(self.elements)


def default_rounds_partition(k: int, d: int) -> int:
    """Rounds ``ceil((e k)^(d-1) ln(3k))`` for d-1 simple partition matroids."""
    if d < 2:
        raise ValueError("need at least one structured matroid (d >= 2)")
    if k < 2:
        raise ValueError("k < 2: use the k = 1 shortcut instead of sampling rounds")
    return math.ceil((math.e * k) ** (d - 1) * math.log(3 * k))


def default_rounds_coverable(k: int, g_values: Sequence[int]) -> int:
    """Rounds ``ceil(4^(d-1) ln(3k) prod g_i)`` for coverable matroids."""
    if not g_values:
        raise ValueError("need at least one structured matroid (d >= 2)")
    if k < 2:
        raise ValueError("k < 2: use the k = 1 shortcut instead of sampling rounds")
    for g in g_values:
        if g < k:
            raise CoverabilityError(f"coverability bound g(k) = {g} is below k = {k}")
    return math.ceil(4 ** len(g_values) * math.log(3 * k) * math.prod(g_values))


def g_value(class_tag: str, k: int) -> int:
    """Coverability bound for the classes with a closed form."""
    if class_tag == "simple-partition":
        return k
    if class_tag == "graphic":
        # every same-component vertex pair of a k-edge forest; k+1 vertices at worst
        return k * (k + 1) // 2
    if class_tag == "cographic":
        # |X| + |U| + |W| - 1 with |U|, |W| <= 2k
        return 5 * k - 1
    raise ValueError(
        f"no coverability bound for {class_tag!r}; transversal and laminar matroids "
        "are not coverable, use transversal_kernel or laminar_kernel")


@dataclass(frozen=True)
class CoverabilityProfile:
    class_tag: str

    def g(self, k: int) -> int:
        value = g_value(self.class_tag, k)
        if value < k:
            raise CoverabilityError(f"g({k}) = {value} < {k}")
        return value


def coverability_profile(M: Matroid) -> CoverabilityProfile:
    if isinstance(M, Partition) and M.is_simple:
        return CoverabilityProfile("simple-partition")
    if isinstance(M, Graphic):
        return CoverabilityProfile("graphic")
    if isinstance(M, Cographic):
        return CoverabilityProfile("cographic")
    raise ClassMismatchError(f"{type(M).__name__} matroid has no known coverability bound")


def common_ground(matroids: Iterable[Matroid]) -> frozenset[int]:
    matroids = list(matroids)
    ground = matroids[0].ground
    for M in matroids[1:]:
        if M.n != matroids[0].n:
            raise ValueError("all matroids must share the same element id range")
        ground = ground & M.ground
    return ground


def best_singleton(active: Iterable[int], w) -> frozenset[int]:
    """Maximum-weight feasible singleton (minimum id on ties), or nothing."""
    order = weight_order(active, w)
    return frozenset(order[:1])


def _run_rounds(algorithm: str, M0: Matroid, w: np.ndarray, k: int, T: int,
                active: frozenset[int], seed: int, repeat: int,
                sample: Callable[[RoundStreams, int], np.ndarray], meta: dict) -> Kernel:
    if repeat < 1:
        raise ValueError("repeat must be at least 1")
    order = np.array(weight_order(active, w), dtype=np.int64)
    elements: set[int] = set()
    log: list[int] = []
    for rep in range(repeat):
        streams = RoundStreams(seed, rep)
        for t in range(T):
            pool = sample(streams, t)
            candidates = order[pool[order]].tolist() if order.size else []
            selected, _ = _greedy_sorted(M0, candidates, k)
            elements.update(selected)
            log.append(len(selected))
    return Kernel(frozenset(elements), algorithm, seed, T, tuple(log), repeat, meta)


def _shortcut(algorithm, active, w, seed, repeat, meta) -> Kernel:
    return Kernel(best_singleton(active, w), algorithm, seed, 0, (), repeat,
                  dict(meta, shortcut="k=1"))


def partition_kernel(M0: Matroid, parts: Sequence[Partition], w, k: int, seed: int = 0,
                     T: int | None = None, repeat: int = 1) -> Kernel:
    """
    Reachable kernel when every matroid in ``parts`` is a simple partition matroid.

    Per round each block of ``parts[i]`` is kept with probability ``1/k``.
    """
    seed = check_seed(seed)
    if k < 1:
        raise ValueError("k must be positive")
    for i, P in enumerate(parts):
        if not isinstance(P, Partition) or not P.is_simple:
            raise ClassMismatchError(f"structured matroid {i} is not a simple partition matroid")
    if not parts:
        raise ValueError("need at least one structured matroid (d >= 2)")
    w = as_weights(w, M0.n)
    active = common_ground([M0, *parts])
    meta = {"d": len(parts) + 1, "k": k}
    if k == 1:
        return _shortcut("partition", active, w, seed, repeat, meta)
    if T is None:
        T = default_rounds_partition(k, len(parts) + 1)
    block_of = [np.array(P.block_of, dtype=np.int64) for P in parts]
    nblocks = [len(P.blocks) for P in parts]
    base = np.zeros(M0.n, dtype=bool)
    base[list(active)] = True
    p = 1.0 / k

    def sample(streams, t):
        pool = base.copy()
        for i, (blk, m) in enumerate(zip(block_of, nblocks)):
            kept = streams.get(t, i).random(m) < p
            pool &= kept[blk]
        return pool

    return _run_rounds("partition", M0, w, k, T, active, seed, repeat, sample, meta)


def coverable_kernel(M0: Matroid, coverables: Sequence[tuple[Matroid, int] | Matroid], w,
                     k: int, seed: int = 0, T: int | None = None, repeat: int = 1) -> Kernel:
    """
    Reachable kernel for g(k)-coverable structured matroids.

    ``coverables`` holds ``(matroid, g)`` pairs; a bare matroid gets the
    closed-form bound of its class. Per round each parallel class of
    matroid ``i`` is kept with probability ``1/g_i``.
    """
    seed = check_seed(seed)
    if k < 1:
        raise ValueError("k must be positive")
    if not coverables:
        raise ValueError("need at least one structured matroid (d >= 2)")
    pairs = []
    for item in coverables:
        if isinstance(item, Matroid):
            item = (item, coverability_profile(item).g(k))
        M, g = item
        if g < k:
            raise CoverabilityError(f"coverability bound g(k) = {g} is below k = {k}")
        pairs.append((M, int(g)))
    w = as_weights(w, M0.n)
    active = common_ground([M0, *(M for M, _ in pairs)])
    g_values = [g for _, g in pairs]
    meta = {"d": len(pairs) + 1, "k": k, "g": g_values}
    if k == 1:
        return _shortcut("coverable", active, w, seed, repeat, meta)
    if T is None:
        T = default_rounds_coverable(k, g_values)
    class_of = []
    nclasses = []
    for M, _ in pairs:
        classes = M.parallel_classes()
        arr = np.full(M0.n + 1, len(classes), dtype=np.int64)
        for c, cls in enumerate(classes):
            arr[list(cls)] = c
        class_of.append(arr[:M0.n])
        nclasses.append(len(classes))
    base = np.zeros(M0.n, dtype=bool)
    base[list(active)] = True

    def sample(streams, t):
        pool = base.copy()
        for i, (cls, m, g) in enumerate(zip(class_of, nclasses, g_values)):
            # trailing False slot absorbs elements outside the matroid's ground
            kept = np.append(streams.get(t, i).random(m) < 1.0 / g, False)
            pool &= kept[cls]
        return pool

    return _run_rounds("coverable", M0, w, k, T, active, seed, repeat, sample, meta)
