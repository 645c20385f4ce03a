"""
Brute-force ground truth: feasible-set enumeration, exact optimum, exchange
and reachability checks, coverability audits, and success-rate estimation.

Everything here is exponential in ``k`` and meant for small instances only.
"""

from __future__ import annotations

import itertools
import math
import random
from collections.abc import Callable, Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._rng import derived_seeds
from .greedy import _greedy_sorted, weight_order
from .laminar import DisjointFamily
from .matroids import LaminarFamily, Matroid
from .sampling import Kernel

__all__ = [
    "Budget",
    "BudgetExceededError",
    "DEFAULT_BUDGET",
    "enumerate_feasible",
    "FeasibilityTable",
    "opt_value",
    "solve",
    "Reachability",
    "check_reachability",
    "reaches_all",
    "check_single_exc",
    "VerificationReport",
    "verify_kernel",
    "run_trials",
    "estimate_success_rate",
    "CoverageReport",
    "check_coverable",
    "tight_sets",
    "good_family_check",
    "phi_value",
    "is_exchangeable",
    "max_exchangeable",
    "lemma1_violations",
    "lemma2_violations",
    "lemma3_violations",
    "transversal_claim_violations",
]


class BudgetExceededError(RuntimeError):
    """The instance is too large for brute force under the configured budget."""


@dataclass(frozen=True)
class Budget:
    max_elements: int = 40
    max_k: int = 5

    def check(self, n: int, k: int) -> None:
        if n > self.max_elements:
            raise BudgetExceededError(f"{n} elements exceeds the brute-force budget of {self.max_elements}")
        if k > self.max_k:
            raise BudgetExceededError(f"k = {k} exceeds the brute-force budget of {self.max_k}")


DEFAULT_BUDGET = Budget()


def _mask(S: Iterable[int]) -> int:
    m = 0
    for e in S:
        m |= 1 << e
    return m


def _members(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def enumerate_feasible(inst, k: int | None = None, budget: Budget = DEFAULT_BUDGET,
                       domain: Iterable[int] | None = None) -> Iterator[tuple[int, ...]]:
    """
    Every feasible set of size at most ``k`` (inside ``domain`` if given),
    by id-ordered backtracking. Infeasible prefixes are pruned, which is
    sound because feasible sets are closed under taking subsets.
    """
    k = inst.k if k is None else k
    budget.check(inst.n, k)
    pool = sorted(inst.ground if domain is None else set(domain) & inst.ground)
    is_feasible = inst.is_feasible

    def extend(cur: list[int], start: int):
        yield tuple(cur)
        if len(cur) == k:
            return
        for j in range(start, len(pool)):
            cur.append(pool[j])
            if is_feasible(cur):
                yield from extend(cur, j + 1)
            cur.pop()

    yield from extend([], 0)


class FeasibilityTable:
    """All feasible sets of size at most ``k``, stored as bitmasks for fast lookups."""

    def __init__(self, inst, k: int | None = None, budget: Budget = DEFAULT_BUDGET):
        self.inst = inst
        self.k = inst.k if k is None else k
        self.weights = inst.weights
        self.sets = list(enumerate_feasible(inst, self.k, budget))
        self.masks = {_mask(S) for S in self.sets}
        self._mask_arr = np.array([_mask(S) for S in self.sets], dtype=np.uint64)
        self._value_arr = np.array([int(sum(int(self.weights[e]) for e in S)) for S in self.sets],
                                   dtype=np.int64)

    def __len__(self):
        return len(self.sets)

    def feasible(self, S: Iterable[int]) -> bool:
        return _mask(S) in self.masks

    def opt(self, domain: Iterable[int] | None = None) -> int:
        if domain is None:
            return int(self._value_arr.max())
        outside = np.uint64(~_mask(domain) & ((1 << 64) - 1))
        inside = (self._mask_arr & outside) == 0
        return int(self._value_arr[inside].max())


def solve(inst, k: int | None = None, domain: Iterable[int] | None = None,
          budget: Budget = DEFAULT_BUDGET) -> tuple[int, tuple[int, ...]]:
    """
    Maximum-weight feasible set of size at most ``k`` inside ``domain``.

    Branch and bound over elements in weight order; a branch is cut when
    its weight plus the heaviest remaining slots cannot beat the incumbent.
    """
    k = inst.k if k is None else k
    budget.check(inst.n, k)
    w = inst.weights
    pool = weight_order(inst.ground if domain is None else set(domain) & inst.ground, w)
    weights = [int(w[e]) for e in pool]
    best_value, best_set = 0, ()
    cur: list[int] = []

    def bound(j: int, slots: int) -> int:
        # pool is weight-sorted, so the next ``slots`` entries are the heaviest left
        return sum(weights[j:j + slots])

    def search(j: int, value: int):
        nonlocal best_value, best_set
        if value > best_value:
            best_value, best_set = value, tuple(sorted(cur))
        if len(cur) == k or j == len(pool):
            return
        if value + bound(j, k - len(cur)) <= best_value:
            return
        for i in range(j, len(pool)):
            if value + bound(i, k - len(cur)) <= best_value:
                return
            cur.append(pool[i])
            if inst.is_feasible(cur):
                search(i + 1, value + weights[i])
            cur.pop()

    search(0, 0)
    return best_value, best_set


def opt_value(inst, domain: Iterable[int] | None = None, k: int | None = None,
              budget: Budget = DEFAULT_BUDGET) -> int:
    return solve(inst, k, domain, budget)[0]


@dataclass(frozen=True)
class Reachability:
    """Witness ``y_1..y_t`` aligned with ``X``, or the labelling ``X`` and the step that failed."""

    X: tuple[int, ...]
    witness: tuple[int, ...] | None
    failed_step: int | None = None

    @property
    def ok(self) -> bool:
        return self.witness is not None


class _Reacher:
    """
    Depth-first search for exchange sequences into one fixed ``R``. A state
    is (replacements made so far, originals still to replace, in order);
    failures are memoized so sequences sharing a tail are not re-explored.
    """

    def __init__(self, inst, R: Iterable[int], feasible: Callable[[int], bool]):
        self.w = [int(v) for v in inst.weights]
        self.R = sorted(set(R), key=lambda e: (-self.w[e], e))
        self.Rmask = _mask(self.R)
        self.feasible = feasible
        self.dead: set[tuple[int, tuple[int, ...]]] = set()
        self.deepest = 0

    def run(self, X: Sequence[int], all_orders: bool = False) -> Reachability:
        """``X`` is processed in the given order, or in every order when ``all_orders``."""
        X = tuple(X)
        orders = itertools.permutations(X) if all_orders else [X]
        witness = None
        for order in orders:
            self.deepest = 0
            path = self._search(order, 0, 0)
            if path is None:
                return Reachability(order, None, self.deepest + 1)
            if witness is None:
                witness = tuple(path)
        return Reachability(X, witness)

    def _search(self, X, i, done):
        if i == len(X):
            return []
        key = (done, X[i:])
        if key in self.dead:
            return None
        self.deepest = max(self.deepest, i)
        x = X[i]
        rest = done | _mask(X[i + 1:])
        wx = self.w[x]
        candidates = [x] if self.Rmask >> x & 1 else []
        for y in self.R:
            if self.w[y] < wx:
                break
            if y != x:
                candidates.append(y)
        for y in candidates:
            ybit = 1 << y
            if rest & ybit:
                continue
            if y != x and not self.feasible(rest | ybit):
                continue
            tail = self._search(X, i + 1, done | ybit)
            if tail is not None:
                return [y] + tail
        self.dead.add(key)
        return None


def _feasible_fn(inst, table: FeasibilityTable | None) -> Callable[[int], bool]:
    if table is not None:
        return table.masks.__contains__
    return lambda mask: inst.is_feasible(_members(mask))


def check_reachability(inst, R: Iterable[int], X: Iterable[int],
                       table: FeasibilityTable | None = None,
                       all_orders: bool = False) -> Reachability:
    """
    Replace ``x_1..x_t`` one at a time by ``y_i`` in ``R`` with
    ``w(y_i) >= w(x_i)`` so that each intermediate set has ``t`` distinct
    elements and is feasible. ``X`` is labelled in the order given; with
    ``all_orders`` every labelling must admit a sequence. Returns a witness,
    or the labelling and first step that no sequence gets past.
    """
    return _Reacher(inst, R, _feasible_fn(inst, table)).run(tuple(X), all_orders)


def reaches_all(inst, R: Iterable[int], table: FeasibilityTable,
                stop_early: bool = True, all_orders: bool = False) -> list[tuple[int, ...]]:
    """
    Feasible sets with no exchange sequence into ``R`` (empty means
    success). Sets are labelled by ascending id unless ``all_orders``.
    """
    reacher = _Reacher(inst, R, table.masks.__contains__)
    Rmask = reacher.Rmask
    failures = []
    for X in table.sets:
        if _mask(X) & ~Rmask == 0:
            continue
        if not reacher.run(X, all_orders).ok:
            failures.append(X)
            if stop_early:
                break
    return failures


@dataclass
class VerificationReport:
    single_exc_violations: list[tuple[tuple[int, ...], int]] = field(default_factory=list)
    reachability_failures: list[tuple[int, ...]] = field(default_factory=list)
    opt_full: int = 0
    opt_kernel: int = 0
    trials: int = 0
    successes: int = 0
    opt_mismatches: int = 0
    trial_opts: list[int] = field(default_factory=list)

    @property
    def success_fraction(self) -> float:
        return self.successes / self.trials if self.trials else 0.0

    def to_dict(self) -> dict:
        return {
            "single_exc_violations": [[list(X), x] for X, x in self.single_exc_violations],
            "reachability_failures": [list(X) for X in self.reachability_failures],
            "opt_full": self.opt_full,
            "opt_kernel": self.opt_kernel,
            "trials": self.trials,
            "successes": self.successes,
            "success_fraction": self.success_fraction,
            "opt_mismatches": self.opt_mismatches,
        }


def check_single_exc(inst, R: Iterable[int], k: int | None = None,
                     table: FeasibilityTable | None = None,
                     budget: Budget = DEFAULT_BUDGET) -> VerificationReport:
    """
    For every feasible ``X`` (``|X| <= k``) and ``x`` in ``X``, look for
    ``y`` in ``R - (X - x)`` with ``w(y) >= w(x)`` and ``X - x + y`` feasible.
    """
    if table is None:
        table = FeasibilityTable(inst, k, budget)
    w = inst.weights
    R = weight_order(set(R), w)
    masks = table.masks
    report = VerificationReport()
    for X in table.sets:
        Xmask = _mask(X)
        for x in X:
            rest = Xmask ^ (1 << x)
            found = False
            for y in R:
                if w[y] < w[x]:
                    break
                if rest >> y & 1:
                    continue
                if (rest | 1 << y) in masks:
                    found = True
                    break
            if not found:
                report.single_exc_violations.append((X, x))
    report.opt_full = table.opt()
    report.opt_kernel = table.opt(R)
    return report


def verify_kernel(inst, R: Iterable[int], table: FeasibilityTable | None = None,
                  budget: Budget = DEFAULT_BUDGET, all_orders: bool = True) -> VerificationReport:
    """Single-exchange check, full reachability check and optimum comparison for one kernel."""
    R = set(R)
    if table is None:
        table = FeasibilityTable(inst, inst.k, budget)
    report = check_single_exc(inst, R, table=table)
    report.reachability_failures = reaches_all(inst, R, table, False, all_orders)
    report.opt_full = solve(inst, inst.k, None, budget)[0]
    report.trials = 1
    report.successes = int(not report.reachability_failures)
    report.trial_opts = [report.opt_kernel]
    report.opt_mismatches = int(report.successes and report.opt_kernel != report.opt_full)
    return report


def _kernel_elements(result) -> frozenset[int]:
    return result.elements if isinstance(result, Kernel) else frozenset(result)


def run_trials(algorithm: Callable[[object, int], Kernel | Iterable[int]], inst, trials: int,
               seed: int = 0, table: FeasibilityTable | None = None,
               budget: Budget = DEFAULT_BUDGET, workers: int = 1,
               all_orders: bool = True) -> VerificationReport:
    """
    Run ``algorithm(inst, seed_j)`` for ``trials`` derived seeds. A trial
    succeeds when every feasible set, in every labelling (or ascending id
    order without ``all_orders``), reaches the kernel; for each success
    the kernel optimum is cross-checked against the full optimum.

    With ``workers > 1`` the kernels are built in worker processes, which
    requires ``algorithm`` and ``inst`` to be picklable.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if table is None:
        table = FeasibilityTable(inst, inst.k, budget)
    seeds = derived_seeds(seed, trials)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(algorithm, itertools.repeat(inst), seeds))
    else:
        results = (algorithm(inst, s) for s in seeds)
    opt_full = solve(inst, inst.k, None, budget)[0]
    report = VerificationReport(opt_full=opt_full, opt_kernel=opt_full, trials=trials)
    cache: dict[frozenset[int], bool] = {}
    for result in results:
        R = _kernel_elements(result)
        if R not in cache:
            failures = reaches_all(inst, R, table, True, all_orders)
            cache[R] = not failures
            if failures:
                report.reachability_failures.append(failures[0])
        opt_R = table.opt(R)
        report.trial_opts.append(opt_R)
        report.opt_kernel = min(report.opt_kernel, opt_R)
        if cache[R]:
            report.successes += 1
            if opt_R != opt_full:
                report.opt_mismatches += 1
    return report


def estimate_success_rate(algorithm, inst, trials: int, seed: int = 0,
                          table: FeasibilityTable | None = None,
                          budget: Budget = DEFAULT_BUDGET, all_orders: bool = True) -> float:
    return run_trials(algorithm, inst, trials, seed, table, budget,
                      all_orders=all_orders).success_fraction


@dataclass(frozen=True)
class CoverageReport:
    ok: bool
    max_cover: int
    witness: tuple[int, ...]
    checked: int


def check_coverable(M: Matroid, k: int, claimed_g: int, budget: Budget = DEFAULT_BUDGET,
                    samples: int | None = None, seed: int = 0) -> CoverageReport:
    """
    For each independent ``X`` with ``|X| <= k``, the smallest cover of
    ``span(X)`` by singleton spans uses one element per parallel class met
    by ``span(X)``. Reports the largest such cover over all ``X`` (or over
    ``samples`` random ones) and whether it stays within ``claimed_g``.
    """
    budget.check(len(M.ground), k)
    class_id = {}
    for c, cls in enumerate(M.parallel_classes()):
        for e in cls:
            class_id[e] = c
    ground = sorted(M.ground)
    indep = [X for r in range(1, k + 1) for X in itertools.combinations(ground, r) if M._indep(X)]
    if samples is not None and samples < len(indep):
        indep = random.Random(seed).sample(indep, samples)
    best, witness = 0, ()
    for X in indep:
        cover = len({class_id[e] for e in M.span(X)})
        if cover > best:
            best, witness = cover, X
    return CoverageReport(best <= claimed_g, best, witness, len(indep))


def tight_sets(L: LaminarFamily, X: Iterable[int], x: int) -> list[int]:
    """Nodes ``A`` of ``L`` with ``|(X - x) & A| == c(A)``."""
    rest = set(X) - {x}
    return [i for i, (A, c) in enumerate(zip(L.sets, L.caps)) if len(rest & A) == c]


def good_family_check(L: LaminarFamily, Z: DisjointFamily, X: Iterable[int], x: int) -> bool:
    """
    ``Z`` is good for ``(X, x)`` when one member ``Z0`` holds ``x`` and ``X``
    misses the other members, and no tight set contains any member.
    """
    X = set(X)
    sets = L.sets
    holders = [m for m in Z.members if x in sets[m]]
    if len(holders) != 1:
        return False
    if any(X & sets[m] for m in Z.members if m != holders[0]):
        return False
    tight = set(tight_sets(L, X, x))
    for m in Z.members:
        node = m
        while node != -1:
            if node in tight:
                return False
            node = L.parent[node]
    return True


def phi_value(L: LaminarFamily, Z: DisjointFamily, X: Iterable[int], x: int) -> float:
    """Largest cap of a tight set inside the ``x``-containing member, or ``-inf``."""
    sets = L.sets
    holder = next(m for m in Z.members if x in sets[m])
    caps = [L.caps[i] for i in tight_sets(L, X, x) if sets[i] <= sets[holder]]
    return max(caps, default=-math.inf)


def is_exchangeable(M: Matroid, X: Sequence[int], x: int, Y: Iterable[int]) -> bool:
    rest = [e for e in X if e != x]
    Y = set(Y)
    return x in Y and all(M._indep(rest + [y]) if y not in rest else True for y in Y)


def max_exchangeable(M: Matroid, X: Sequence[int], x: int) -> frozenset[int]:
    """The largest ``(X, x)``-exchangeable set of ``M``."""
    rest = [e for e in X if e != x]
    return frozenset(y for y in M.ground if y in rest or M._indep(rest + [y]))


def _independent_sets(M: Matroid, k: int) -> list[tuple[int, ...]]:
    ground = sorted(M.ground)
    return [X for r in range(k + 1) for X in itertools.combinations(ground, r) if M._indep(X)]


def lemma1_violations(M: Matroid, k: int) -> list[tuple]:
    """
    ``(T, X, x)`` with ``T, X`` independent (sizes at most ``k``), ``x`` in
    ``X`` and in ``span(T)``, yet no ``y`` in ``T - (X - x)`` keeps
    ``X - x + y`` independent.
    """
    sets = _independent_sets(M, k)
    spans = {T: M.span(T) for T in sets}
    out = []
    for T in sets:
        for X in sets:
            for x in X:
                if x not in spans[T]:
                    continue
                rest = [e for e in X if e != x]
                if not any(M._indep(rest + [y]) for y in T if y not in rest):
                    out.append((T, X, x))
    return out


def lemma2_violations(M: Matroid, w, k: int, pools: Iterable[Iterable[int]] | None = None) -> list[tuple]:
    """
    ``(F, X, x)`` where the greedy output on pool ``F`` has no ``y`` outside
    ``X - x`` with ``w(y) >= w(x)`` and ``X - x + y`` independent. Every
    subset of the ground set is a pool unless ``pools`` is given.
    """
    ground = sorted(M.ground)
    if pools is None:
        pools = (S for r in range(len(ground) + 1) for S in itertools.combinations(ground, r))
    sets = [X for X in _independent_sets(M, k) if X]
    out = []
    for F in pools:
        Fset = set(F)
        G, _ = _greedy_sorted(M, weight_order(Fset, w), k)
        for X in sets:
            for x in X:
                if x not in Fset:
                    continue
                rest = [e for e in X if e != x]
                if not any(y not in rest and w[y] >= w[x] and M._indep(rest + [y]) for y in G):
                    out.append((tuple(sorted(Fset)), X, x))
    return out


def lemma3_violations(inst, k: int | None = None, extra_sets: int = 3, seed: int = 0,
                      budget: Budget = DEFAULT_BUDGET) -> list[tuple]:
    """
    For every feasible ``(X, x)``, take ``(X, x)``-exchangeable sets ``F_i``
    for the structured matroids (the largest one, plus ``extra_sets`` random
    subsets of it that keep ``x``) and check that greedy for ``M0`` on their
    intersection yields a valid exchange. Returns the offending cases.
    """
    k = inst.k if k is None else k
    rng = random.Random(seed)
    M0, structured = inst.matroids[0], inst.matroids[1:]
    w = inst.weights
    out = []
    for X in enumerate_feasible(inst, k, budget):
        rest = set(X)
        for x in X:
            rest.discard(x)
            options = []
            for M in structured:
                big = max_exchangeable(M, X, x)
                others = sorted(big - {x})
                choices = [big]
                for _ in range(extra_sets):
                    choices.append(frozenset([x, *(e for e in others if rng.random() < 0.5)]))
                options.append(choices)
            for combo in itertools.product(*options):
                pool = frozenset.intersection(*combo) if combo else frozenset(inst.ground)
                G, _ = _greedy_sorted(M0, weight_order(pool & inst.ground, w), k)
                if not any(y not in rest and w[y] >= w[x] and inst.is_feasible([*rest, y]) for y in G):
                    out.append((X, x, tuple(sorted(pool))))
            rest.add(x)
    return out


def transversal_claim_violations(M0: Matroid, transversals: Sequence[Matroid], k: int,
                                 budget: Budget = Budget(max_elements=4096)) -> dict[str, list]:
    """
    Both directions of the lift correspondence, up to size ``k``: every
    lifted feasible set projects injectively onto a feasible set, and every
    feasible set is the projection of some lifted feasible set.
    """
    from .instances import IntersectionInstance
    from .transversal import build_reduction

    n = M0.n
    zero = np.zeros(n, dtype=np.int64)
    red = build_reduction(M0, transversals, zero)
    original = IntersectionInstance([M0, *transversals], zero, k)
    lifted = IntersectionInstance([red.m0, *red.parts], red.weights, k) if len(red.lifted) else None
    projected = set()
    forward = []
    if lifted is not None:
        for Xp in enumerate_feasible(lifted, k, budget):
            X = red.lifted.project(Xp)
            if len(X) != len(Xp) or not original.is_feasible(sorted(X)):
                forward.append(Xp)
            projected.add(X)
    backward = [X for X in enumerate_feasible(original, k, budget) if frozenset(X) not in projected]
    return {"forward": forward, "backward": backward}
