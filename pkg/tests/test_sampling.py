import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reachkernel.generators import generate, random_simple_partition
from reachkernel.matroids import Cographic, Graphic, Partition, Transversal, Uniform
from reachkernel.sampling import (
    ClassMismatchError,
    CoverabilityError,
    coverability_profile,
    coverable_kernel,
    default_rounds_coverable,
    default_rounds_partition,
    g_value,
    partition_kernel,
)
from reachkernel.verify import FeasibilityTable, estimate_success_rate, opt_value
from reachkernel.instances import IntersectionInstance


def test_partition_rounds():
    assert default_rounds_partition(2, 2) == 10
    assert default_rounds_partition(3, 3) == 147
    assert default_rounds_partition(2, 2) == math.ceil(2 * math.e * math.log(6))
    with pytest.raises(ValueError):
        default_rounds_partition(2, 1)


def test_coverable_rounds():
    assert default_rounds_coverable(2, [3]) == 22
    assert default_rounds_coverable(2, [9]) == 65
    with pytest.raises(CoverabilityError):
        default_rounds_coverable(2, [1])


def test_g_values():
    assert g_value("simple-partition", 4) == 4
    assert g_value("graphic", 2) == 3
    assert g_value("cographic", 2) == 9
    with pytest.raises(ValueError):
        g_value("transversal", 2)


def test_coverability_profile_dispatch():
    assert coverability_profile(Partition([[0], [1]])).g(3) == 3
    assert coverability_profile(Graphic(2, [(0, 1)])).g(3) == 6
    assert coverability_profile(Cographic(2, [(0, 1), (0, 1)])).g(3) == 14
    with pytest.raises(ClassMismatchError):
        coverability_profile(Partition([[0, 1]], caps=[2]))


def _small_partition_instance():
    # M0 uniform rank 2; blocks {a,b},{c,d}; weights 4,3,2,1
    M0 = Uniform(4, 2)
    P = Partition([[0, 1], [2, 3]])
    return M0, P, [4, 3, 2, 1]


def test_partition_example_opt_preserved():
    M0, P, w = _small_partition_instance()
    inst = IntersectionInstance([M0, P], w, 2)
    assert opt_value(inst) == 6
    hits = 0
    for seed in range(100):
        R = partition_kernel(M0, [P], w, 2, seed=seed)
        hits += opt_value(inst, R.elements) == 6
    assert hits >= 67


def test_k1_shortcut():
    M0, P, w = _small_partition_instance()
    R = partition_kernel(M0, [P], w, 1, seed=5)
    assert R.elements == {0} and R.rounds == 0 and R.meta["shortcut"] == "k=1"
    R = coverable_kernel(M0, [P], [1, 7, 7, 0], 1)
    assert R.elements == {1}


def test_rejects_non_simple_partition():
    M0 = Uniform(4, 2)
    with pytest.raises(ClassMismatchError):
        partition_kernel(M0, [Partition([[0, 1], [2, 3]], caps=[2, 1])], [1] * 4, 2)
    with pytest.raises(CoverabilityError):
        coverable_kernel(M0, [(Partition([[0, 1], [2, 3]]), 1)], [1] * 4, 2)


def test_determinism_and_seed_sensitivity():
    inst = generate("partition", {"n": 20, "d": 3, "k": 3}, seed=7)
    a = partition_kernel(inst.m0, inst.structured, inst.weights, 3, seed=11)
    b = partition_kernel(inst.m0, inst.structured, inst.weights, 3, seed=11)
    assert a == b and a.round_log == b.round_log
    outs = {partition_kernel(inst.m0, inst.structured, inst.weights, 3, seed=s, T=3).elements
            for s in range(10)}
    assert len(outs) > 1


def test_repeat_unions_independent_runs():
    inst = generate("partition", {"n": 20, "d": 2, "k": 2}, seed=1)
    one = partition_kernel(inst.m0, inst.structured, inst.weights, 2, seed=3, T=4)
    two = partition_kernel(inst.m0, inst.structured, inst.weights, 2, seed=3, T=4, repeat=2)
    assert one.elements <= two.elements
    assert len(two.round_log) == 8
    assert len(two) <= 2 * 2 * 4


def test_coverable_reproduces_partition_sampling():
    rng = np.random.default_rng(0)
    for trial in range(10):
        P = random_simple_partition(15, rng)
        M0 = Uniform(15, 3)
        w = rng.integers(0, 10, size=15)
        for seed in range(5):
            a = partition_kernel(M0, [P], w, 3, seed=seed, T=20)
            b = coverable_kernel(M0, [(P, 3)], w, 3, seed=seed, T=20)
            assert a.elements == b.elements


def test_graphic_triangle_example():
    M0 = Uniform(3, 2)
    M1 = Graphic(3, [(0, 1), (1, 2), (0, 2)])
    w = [3, 2, 1]
    inst = IntersectionInstance([M0, M1], w, 2)
    assert opt_value(inst) == 5
    hits = sum(opt_value(inst, coverable_kernel(M0, [M1], w, 2, seed=s).elements) == 5
               for s in range(100))
    assert hits >= 67


@pytest.mark.parametrize("kind", ["partition", "coverable-graphic", "coverable-cographic"])
@given(seed=st.integers(0, 2**32 - 1), k=st.integers(2, 3), d=st.integers(2, 3))
def test_size_bound(kind, seed, k, d):
    inst = generate(kind, {"n": 18, "d": d, "k": k}, seed=seed)
    T = 5
    if kind == "partition":
        R = partition_kernel(inst.m0, inst.structured, inst.weights, k, seed=seed, T=T)
    else:
        R = coverable_kernel(inst.m0, inst.structured, inst.weights, k, seed=seed, T=T)
    assert len(R) <= k * T
    assert all(c <= k for c in R.round_log)
    assert R.elements <= inst.ground


def test_loops_never_enter_kernel():
    M0 = Graphic(3, [(0, 0), (0, 1), (1, 2), (0, 2)])
    P = Partition([[0, 1], [2], [3]])
    R = partition_kernel(M0, [P], [9, 1, 1, 1], 2, T=30)
    assert 0 not in R


def test_success_rate_small_partition():
    inst = generate("partition", {"n": 16, "d": 2, "k": 2}, seed=2)
    rate = estimate_success_rate(lambda i, s: partition_kernel(i.m0, i.structured, i.weights, i.k, seed=s),
                                 inst, 50, seed=1, table=FeasibilityTable(inst))
    assert rate >= 0.6
