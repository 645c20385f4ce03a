"""Sample candidate families from a two-level laminar family.

Each call refines the current disjoint family down the tree and returns a
list of disjoint sets. The size of the list never exceeds the bound for the
family's height.
"""
from collections import Counter

import numpy as np

from reachkernel import LaminarFamily
from reachkernel.laminar import DisjointFamily, candidate_bound, find_candidate


def main():
    # root {0..7} cap 2, children {0,1,2} and {3,4,5} cap 1, leaves 6 and 7 free
    fam = LaminarFamily(8, [(range(8), 2), ([0, 1, 2], 1), ([3, 4, 5], 1)])
    Z = DisjointFamily(fam, fam.roots)
    k = 2
    rng = np.random.default_rng(0)
    sizes = Counter()
    for _ in range(1000):
        Y = find_candidate(Z, k, rng)
        sizes[len(Y)] += 1
    print("candidate family sizes over 1000 draws:", dict(sorted(sizes.items())))
    print("one draw:", [sorted(s) for s in find_candidate(Z, k, rng)])
    print("size bound at height 2:", candidate_bound(k, 2))


if __name__ == "__main__":
    main()
