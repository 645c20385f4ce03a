import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reachkernel.generators import generate
from reachkernel.instances import MatchingInstance
from reachkernel.matching import default_rounds_matching, induced_edges, matching_kernel
from reachkernel.matroids import MalformedInputError, Uniform
from reachkernel.verify import enumerate_feasible, opt_value


def test_rounds():
    assert default_rounds_matching(2) == 78
    assert default_rounds_matching(3) == 216
    with pytest.raises(ValueError):
        default_rounds_matching(1)


def _path_instance(k=2):
    # P4: e1 = (0,1), e2 = (1,2), e3 = (2,3)
    return MatchingInstance(4, [(0, 1), (1, 2), (2, 3)], Uniform(3, 2), [3, 2, 1], k)


def test_path_opt_and_preservation():
    inst = _path_instance()
    assert opt_value(inst) == 4
    hits = sum(opt_value(inst, matching_kernel(inst, seed=s).elements) == 4 for s in range(100))
    assert hits >= 60


def test_repeat_doubles_rounds():
    inst = generate("matching", {"n": 12, "k": 2}, seed=3)
    R = matching_kernel(inst, seed=1, repeat=2)
    assert R.rounds == 78 and len(R.round_log) == 156
    assert matching_kernel(inst, seed=1).elements <= R.elements


def test_self_loop_rejected():
    with pytest.raises(MalformedInputError):
        MatchingInstance(2, [(0, 0)], Uniform(1, 1), [1], 1)


def test_induced_edges():
    inst = _path_instance()
    assert induced_edges(inst, {0, 1, 2}) == {0, 1}


def test_k1_shortcut():
    R = matching_kernel(_path_instance(k=1), seed=4)
    assert R.elements == {0} and R.rounds == 0


@given(seed=st.integers(0, 2**32 - 1))
def test_rainbow_feasibility_matches_definition(seed):
    inst = generate("rainbow", {"n": 10, "k": 3, "colors": 4}, seed=seed)
    colour = inst.matroid.block_of
    got = set(enumerate_feasible(inst, 3))
    want = set()
    for r in range(4):
        for S in itertools.combinations(range(10), r):
            ends = [v for e in S for v in inst.edges[e]]
            if len(set(ends)) == len(ends) and len({colour[e] for e in S}) == len(S):
                want.add(S)
    assert got == want


@given(seed=st.integers(0, 2**32 - 1), k=st.integers(2, 3))
def test_size_bound(seed, k):
    inst = generate("matching", {"n": 20, "k": k}, seed=seed)
    R = matching_kernel(inst, seed=seed, T=15)
    assert len(R) <= k * 15
    for t, c in enumerate(R.round_log):
        assert c <= k
