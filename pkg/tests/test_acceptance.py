"""
Acceptance gate. Each criterion prints one PASS/FAIL line and asserts its
own tolerance and runtime limit. Criterion 7 reuses the trial runs of
criteria 4 to 6 (cached, so it also works when run on its own).
"""

import functools
import time

import numpy as np
import pytest

from reachkernel.deterministic import deterministic_kernel
from reachkernel.dispatch import KernelRunner, kernelize
from reachkernel.generators import (
    generate,
    random_matroid,
    random_multigraph,
    random_simple_partition,
)
from reachkernel.laminar import (
    DisjointFamily,
    candidate_bound,
    default_rounds_laminar,
    find_candidate,
    normalize_laminar,
)
from reachkernel.matching import default_rounds_matching
from reachkernel.matroids import Cographic, Graphic, Uniform, check_matroid_axioms
from reachkernel.sampling import (
    coverability_profile,
    default_rounds_coverable,
    default_rounds_partition,
)
from reachkernel.verify import (
    Budget,
    FeasibilityTable,
    check_coverable,
    check_single_exc,
    lemma1_violations,
    lemma2_violations,
    lemma3_violations,
    reaches_all,
    run_trials,
    solve,
    transversal_claim_violations,
)

THRESHOLD = 0.60
TRIALS = 100
# read by the terminal summary hook in conftest.py
RESULTS = []


def report(number, ok, detail, elapsed, limit):
    status = "PASS" if ok and elapsed < limit else "FAIL"
    line = f"ACCEPTANCE criterion {number}: {status} | {detail} | {elapsed:.1f}s (limit {limit:.0f}s)"
    print("\n" + line)
    RESULTS.append(line)
    return status == "PASS"


@pytest.fixture
def out(capsys):
    with capsys.disabled():
        yield


# -- 1. matroid axioms --------------------------------------------------------

MATROID_CLASSES = ["uniform", "partition", "simple-partition", "graphic", "cographic",
                   "transversal", "laminar"]


def test_criterion_1_matroid_axioms(out):
    start = time.perf_counter()
    failures = []
    for kind in MATROID_CLASSES:
        rng = np.random.default_rng(1000 + MATROID_CLASSES.index(kind))
        for i in range(50):
            n = int(rng.integers(1, 9))
            M = random_matroid(kind, n, rng, k=int(rng.integers(1, 4)))
            if not check_matroid_axioms(M):
                failures.append((kind, i))
    elapsed = time.perf_counter() - start
    total = 50 * len(MATROID_CLASSES)
    ok = report(1, not failures, f"{total - len(failures)}/{total} instances over "
                f"{len(MATROID_CLASSES)} classes pass the axioms", elapsed, 10)
    assert ok, failures


# -- 2. exchange lemmas -------------------------------------------------------

LEMMA_KINDS = ["partition", "coverable-graphic", "coverable-cographic", "transversal", "laminar"]


def test_criterion_2_exchange_lemmas(out):
    start = time.perf_counter()
    bad = {1: 0, 2: 0, 3: 0}
    for i in range(30):
        kind = LEMMA_KINDS[i % len(LEMMA_KINDS)]
        k = 1 + i % 3
        d = 2 + (i // 3) % 2
        n = 7 + i % 4 if k < 3 else 7 + i % 2
        inst = generate(kind, {"n": n, "d": d, "k": k}, seed=2000 + i)
        for M in inst.matroids:
            bad[1] += len(lemma1_violations(M, k))
        bad[2] += len(lemma2_violations(inst.m0, inst.weights, k))
        bad[3] += len(lemma3_violations(inst, k, seed=i))
    elapsed = time.perf_counter() - start
    ok = report(2, not any(bad.values()),
                f"30 instances (|E| 7..10, k<=3, d<=3), violations L1={bad[1]} L2={bad[2]} L3={bad[3]}",
                elapsed, 60)
    assert ok, bad


# -- 3. hard size bounds ------------------------------------------------------

def test_criterion_3_size_bounds(out):
    start = time.perf_counter()
    violations = []
    runs = 0
    for i in range(20):
        k = 2 + i % 2
        d = 2 + (i // 2) % 2
        seed = 3000 + i
        inst = generate("partition", {"n": 24, "d": d, "k": k}, seed=seed)
        R = kernelize(inst, "partition", seed)
        runs += 1
        if R.rounds != default_rounds_partition(k, d) or len(R) > k * R.rounds:
            violations.append(("partition", i))
        for kind in ("coverable-graphic", "coverable-cographic"):
            inst = generate(kind, {"n": 24, "d": d, "k": k}, seed=seed)
            R = kernelize(inst, "coverable", seed)
            g = [coverability_profile(M).g(k) for M in inst.structured]
            runs += 1
            if R.rounds != default_rounds_coverable(k, g) or len(R) > k * R.rounds:
                violations.append((kind, i))
        inst = generate("matching", {"n": 24, "k": k}, seed=seed)
        R = kernelize(inst, "matching", seed)
        runs += 1
        if R.rounds != default_rounds_matching(k) or len(R) > k * R.rounds:
            violations.append(("matching", i))
        for kind in ("partition", "coverable-graphic", "coverable-cographic"):
            inst = generate(kind, {"n": 20, "d": 2, "k": k}, seed=seed)
            R = kernelize(inst, "deterministic")
            g = R.meta["g"]
            runs += 1
            if len(R) > k * k * (g + 1):
                violations.append(("deterministic", kind, i))
    rng = np.random.default_rng(3100)
    for i in range(200):
        k = int(rng.integers(2, 5))
        inst = generate("laminar", {"n": 16, "d": 2, "k": k, "levels": 1 + i % 4}, seed=3200 + i)
        fam = normalize_laminar(inst.structured[0].family, k, inst.structured[0].ground)
        Z = DisjointFamily(fam, fam.roots)
        runs += 1
        if len(find_candidate(Z, k, rng)) > candidate_bound(k, Z.height):
            violations.append(("find_candidate", i))
    elapsed = time.perf_counter() - start
    ok = report(3, not violations, f"{runs} runs, {len(violations)} bound violations", elapsed, 600)
    assert ok, violations


# -- 4 / 5 / 6 share trial runs with 7 ---------------------------------------

def _c4_instances():
    """20 instances per family, n in 16..30, k in {2,3}, d in {2,3}."""
    out = []
    for fam, kind, alg in [("partition", "partition", "partition"),
                           ("coverable-graphic", "coverable-graphic", "coverable"),
                           ("coverable-cographic", "coverable-cographic", "coverable"),
                           ("transversal", "transversal", "transversal"),
                           ("matching", "matching", "matching")]:
        for i in range(20):
            k = 2 + i % 2
            d = 2 + (i // 2) % 2
            if kind == "coverable-cographic" and d == 3:
                k = 2
            n = 16 + (7 * i) % 15
            params = {"n": n, "d": d, "k": k}
            if kind == "matching":
                params = {"n": n, "k": k}
            out.append((fam, alg, generate(kind, params, seed=4000 + 100 * len(out) + i)))
    return out


@functools.lru_cache(maxsize=None)
def _c4_results():
    results = []
    start = time.perf_counter()
    for i, (fam, alg, inst) in enumerate(_c4_instances()):
        rep = run_trials(KernelRunner(alg), inst, TRIALS, seed=400 + i)
        results.append((fam, inst.n, inst.k, rep))
    return results, time.perf_counter() - start


@functools.lru_cache(maxsize=None)
def _c5_results():
    results = []
    start = time.perf_counter()
    for i in range(10):
        inst = generate("laminar", {"n": 12 + i % 5, "d": 2, "k": 2, "levels": 2}, seed=5000 + i)
        rep = run_trials(KernelRunner("laminar"), inst, TRIALS, seed=50 + i)
        results.append((inst, rep))
    return results, time.perf_counter() - start


@functools.lru_cache(maxsize=None)
def _c6_results():
    results = []
    start = time.perf_counter()
    kinds = ["partition", "coverable-graphic", "coverable-cographic"]
    for i in range(50):
        kind = kinds[i % 3]
        k = 1 + i % 3
        inst = generate(kind, {"n": 12 + i % 9, "d": 2, "k": k}, seed=6000 + i)
        R = deterministic_kernel(inst.m0, inst.structured[0], inst.weights, k)
        table = FeasibilityTable(inst)
        exc = check_single_exc(inst, R.elements, table=table)
        reach = not reaches_all(inst, R.elements, table, all_orders=True)
        opt_full = solve(inst)[0]
        results.append((kind, inst, R, exc, reach, opt_full))
    return results, time.perf_counter() - start


@pytest.mark.slow
def test_criterion_4_randomized_reachability(out):
    results, elapsed = _c4_results()
    low = [(fam, n, k, rep.success_fraction) for fam, n, k, rep in results
           if rep.success_fraction < THRESHOLD]
    per = {}
    for fam, _, _, rep in results:
        per.setdefault(fam, []).append(rep.success_fraction)
    summary = ", ".join(f"{fam} min={min(v):.2f}" for fam, v in per.items())
    ok = report(4, not low, f"{len(results)} instances x {TRIALS} trials; {summary}", elapsed, 600)
    assert ok, low


def test_criterion_5_laminar_kernel(out):
    results, elapsed = _c5_results()
    rates = [rep.success_fraction for _, rep in results]
    ok = report(5, min(rates) >= THRESHOLD and default_rounds_laminar(2, 2) == 53,
                f"10 two-level instances, T=53, success min={min(rates):.2f} mean={np.mean(rates):.2f}",
                elapsed, 600)
    assert ok, rates


def test_criterion_6_deterministic_kernel(out):
    results, elapsed = _c6_results()
    bad = [(kind, inst.n, inst.k) for kind, inst, _, exc, _, _ in results if exc.single_exc_violations]
    ok = report(6, not bad, f"50 instances, {len(results) - len(bad)}/50 with zero single-exchange "
                f"violations", elapsed, 300)
    assert ok, bad


def test_criterion_7_optimal_value_preservation(out):
    start = time.perf_counter()
    c4, t4 = _c4_results()
    c5, t5 = _c5_results()
    c6, t6 = _c6_results()
    mismatches = sum(rep.opt_mismatches for *_, rep in c4)
    mismatches += sum(rep.opt_mismatches for _, rep in c5)
    successes = sum(rep.successes for *_, rep in c4) + sum(rep.successes for _, rep in c5)
    for _, inst, R, _, reach, opt_full in c6:
        if reach:
            successes += 1
            if solve(inst, domain=R.elements)[0] != opt_full:
                mismatches += 1
    elapsed = time.perf_counter() - start
    ok = report(7, mismatches == 0, f"{successes} successful trials cross-checked, "
                f"{mismatches} optimum mismatches", elapsed, 600)
    assert ok


# -- 8. coverability audit ----------------------------------------------------

def test_criterion_8_coverability_audit(out):
    start = time.perf_counter()
    rng = np.random.default_rng(8000)
    worst = {"simple-partition": [], "graphic": [], "cographic": []}
    failures = []
    for i in range(30):
        k = 1 + i % 4
        P = random_simple_partition(int(rng.integers(8, 16)), rng)
        v = int(rng.integers(3, 7))
        G = Graphic(v, random_multigraph(v, int(rng.integers(8, 14)), rng))
        v = int(rng.integers(3, 7))
        C = Cographic(v, random_multigraph(v, int(rng.integers(8, 14)), rng, connected=True))
        for tag, M, g in [("simple-partition", P, k), ("graphic", G, k * (k + 1) // 2),
                          ("cographic", C, 5 * k - 1)]:
            rep = check_coverable(M, k, g)
            worst[tag].append(rep.max_cover / g)
            if not rep.ok:
                failures.append((tag, i, k, rep.max_cover, g, rep.witness))
    uni = check_coverable(Uniform(30, 3), 3, 20)
    elapsed = time.perf_counter() - start
    detail = ", ".join(f"{t} worst cover/g={max(v):.2f}" for t, v in worst.items())
    ok = report(8, not failures and not uni.ok and uni.max_cover == 30,
                f"90 audits; {detail}; uniform rank 3 on 30 covers {uni.max_cover} > 20", elapsed, 120)
    assert ok, failures


# -- 9. transversal reduction correspondence ---------------------------------

def test_criterion_9_transversal_correspondence(out):
    start = time.perf_counter()
    bad = []
    checked = 0
    for i in range(20):
        n = 5 + i % 4
        d = 2 + i % 2
        inst = generate("transversal", {"n": n, "d": d, "k": n, "vertices": 3 + i % 2}, seed=9000 + i)
        res = transversal_claim_violations(inst.m0, inst.structured, n,
                                           Budget(max_elements=4096, max_k=n))
        checked += 1
        if res["forward"] or res["backward"]:
            bad.append((i, res))
    elapsed = time.perf_counter() - start
    ok = report(9, not bad, f"{checked} instances (|U| 5..8, d 2..3, all sizes), "
                f"{len(bad)} with a broken direction", elapsed, 60)
    assert ok, bad
