import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import all_subsets
from reachkernel.generators import generate, random_matroid
from reachkernel.matroids import NormalizationError, Partition, Transversal, Uniform
from reachkernel.sampling import partition_kernel
from reachkernel.transversal import (
    LiftTooLargeError,
    build_reduction,
    partition_to_transversal,
    transversal_kernel,
)
from reachkernel.verify import transversal_claim_violations


def test_two_elements_one_right_vertex():
    # U = {u1, u2}, W1 = {w1}, edges u1w1, u2w1
    red = build_reduction(Uniform(2, 2), [Transversal([[0], [0]])], [5, 2])
    assert red.lifted.tuples == ((0, (0,)), (1, (1,)))
    assert red.parts[0].blocks == ((0, 1),)
    assert red.weights.tolist() == [5, 2]


def test_copies_of_one_element_are_parallel():
    T1 = Transversal([[0, 1], [1, 2], [0]])
    T2 = Transversal([[0], [0, 1], [1]])
    w = [4, 5, 6]
    red = build_reduction(Uniform(3, 3), [T1, T2], w)
    for v, (u, _) in enumerate(red.lifted.tuples):
        assert red.weights[v] == w[u]
    for a, b in itertools.combinations(range(len(red.lifted)), 2):
        if red.lifted.phi0(a) == red.lifted.phi0(b):
            assert not red.m0.is_independent([a, b])
    assert len(red.lifted) == 2 * 1 + 2 * 2 + 1 * 1


def test_phi_reports_chosen_edges():
    T1 = Transversal([[0, 1]])
    red = build_reduction(Uniform(1, 1), [T1], [1])
    assert [red.lifted.edges[0][red.lifted.phi(1, v)] for v in range(2)] == [(0, 0), (0, 1)]


def test_degree_one_lift_is_a_bijection():
    # every element has exactly one neighbour: the lift is the partition matroid itself
    adjacency = [[0], [0], [1], [2], [2], [1]]
    T = Transversal(adjacency)
    M0 = Uniform(6, 2)
    w = [3, 1, 4, 1, 5, 9]
    red = build_reduction(M0, [T], w)
    assert [u for u, _ in red.lifted.tuples] == list(range(6))
    P = Partition([[0, 1], [2, 5], [3, 4]])
    for seed in range(5):
        a = transversal_kernel(M0, [T], w, 2, seed=seed)
        b = partition_kernel(M0, [P], w, 2, seed=seed)
        assert a.elements == b.elements


def test_partition_to_transversal():
    simple = partition_to_transversal(Partition([[0, 2], [1]]))
    assert simple.num_right == 2
    capped = partition_to_transversal(Partition([[0, 1, 2]], caps=[2]))
    assert capped.adjacency == ((0, 1),) * 3
    for S in all_subsets(range(3)):
        assert capped.is_independent(S) == (len(S) <= 2)
    empty = partition_to_transversal(Partition([[0, 1], []], caps=[1, 3]))
    assert empty.num_right == 1
    with pytest.raises(NormalizationError):
        partition_to_transversal(Partition([[0], [1]], caps=[0, 1]))


@given(seed=st.integers(0, 2**32 - 1))
def test_partition_to_transversal_same_independence(seed):
    rng = np.random.default_rng(seed)
    P = random_matroid("partition", 6, rng)
    T = partition_to_transversal(P)
    for S in all_subsets(range(6)):
        assert T.is_independent(S) == P.is_independent(S)


def test_lift_cap():
    T = Transversal([list(range(6))] * 6)
    with pytest.raises(LiftTooLargeError) as err:
        build_reduction(Uniform(6, 2), [T, T], [1] * 6, cap=100)
    assert err.value.size == 6 * 36


def test_loop_elements_get_no_copies():
    T = Transversal([[], [0], [0, 1]])
    red = build_reduction(Uniform(3, 2), [T], [1, 1, 1])
    assert {u for u, _ in red.lifted.tuples} == {1, 2}


def test_empty_lift():
    R = transversal_kernel(Uniform(2, 2), [Transversal([[], []])], [1, 1], 2)
    assert R.elements == frozenset() and R.rounds == 0


@given(seed=st.integers(0, 2**32 - 1), d=st.integers(2, 3))
def test_reduction_correspondence(seed, d):
    inst = generate("transversal", {"n": 6, "d": d, "k": 3, "vertices": 3}, seed=seed)
    out = transversal_claim_violations(inst.m0, inst.structured, 3)
    assert out == {"forward": [], "backward": []}


def test_small_instance_preserves_opt():
    from reachkernel.instances import IntersectionInstance
    from reachkernel.verify import opt_value

    rng = np.random.default_rng(3)
    adjacency = [rng.choice(3, size=int(rng.integers(1, 3)), replace=False).tolist() for _ in range(6)]
    T = Transversal(adjacency, 3)
    M0 = Uniform(6, 2)
    w = rng.integers(1, 10, size=6)
    inst = IntersectionInstance([M0, T], w, 2)
    best = opt_value(inst)
    hits = sum(opt_value(inst, transversal_kernel(M0, [T], w, 2, seed=s).elements) == best
               for s in range(100))
    assert hits >= 67


@given(seed=st.integers(0, 2**32 - 1))
def test_kernel_size_bound(seed):
    inst = generate("transversal", {"n": 14, "d": 3, "k": 2}, seed=seed)
    R = transversal_kernel(inst.m0, inst.structured, inst.weights, 2, seed=seed, T=6)
    assert len(R) <= 2 * 6
