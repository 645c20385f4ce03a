"""Build a partition kernel on a toy instance and watch the optimum survive.

M0 is uniform of rank 2 on four elements, M1 splits them into blocks {0,1}
and {2,3}. With weights 4,3,2,1 the best common independent pair is {0,2}
with value 6. Each round keeps each block with probability 1/k, so single
rounds often miss; the default round count makes misses rare.
"""
from reachkernel import IntersectionInstance, Partition, Uniform, opt_value, partition_kernel
from reachkernel.sampling import default_rounds_partition


def main():
    M0, P = Uniform(4, 2), Partition([[0, 1], [2, 3]])
    w = [4, 3, 2, 1]
    inst = IntersectionInstance([M0, P], w, 2)
    print("opt on the full ground set:", opt_value(inst))
    print("default rounds for k=2, d=2:", default_rounds_partition(2, 2))

    for T in (1, 3, None):
        hits = 0
        for seed in range(200):
            R = partition_kernel(M0, [P], w, 2, seed=seed, T=T)
            hits += opt_value(inst, R.elements) == 6
        label = "default" if T is None else T
        print(f"T={label}: optimum kept in {hits}/200 runs")

    R = partition_kernel(M0, [P], w, 2, seed=7)
    print("kernel for seed 7:", sorted(R.elements), "after", R.rounds, "rounds")


if __name__ == "__main__":
    main()
