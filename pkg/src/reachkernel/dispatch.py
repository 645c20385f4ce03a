"""Run a kernel algorithm by name on a loaded instance."""

from __future__ import annotations

from dataclasses import dataclass

from .deterministic import deterministic_kernel
from .instances import IntersectionInstance, MatchingInstance
from .laminar import laminar_kernel
from .matching import matching_kernel
from .sampling import ClassMismatchError, Kernel, coverable_kernel, partition_kernel
from .transversal import transversal_kernel

__all__ = ["ALGORITHMS", "kernelize", "KernelRunner"]

ALGORITHMS = ("partition", "coverable", "transversal", "laminar", "matching", "deterministic")


def kernelize(inst, alg: str, seed: int = 0, T: int | None = None, repeat: int = 1) -> Kernel:
    if alg not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {alg!r}; expected one of {', '.join(ALGORITHMS)}")
    if alg == "matching":
        if not isinstance(inst, MatchingInstance):
            raise ClassMismatchError("the matching kernel needs a matching instance")
        return matching_kernel(inst, seed, T, repeat)
    if not isinstance(inst, IntersectionInstance):
        raise ClassMismatchError(f"the {alg} kernel needs an intersection instance")
    M0, rest, w, k = inst.m0, list(inst.structured), inst.weights, inst.k
    if alg == "partition":
        return partition_kernel(M0, rest, w, k, seed, T, repeat)
    if alg == "coverable":
        return coverable_kernel(M0, rest, w, k, seed, T, repeat)
    if alg == "transversal":
        return transversal_kernel(M0, rest, w, k, seed, T, repeat)
    if alg == "laminar":
        return laminar_kernel(M0, rest, w, k, seed, T, repeat)
    if len(rest) != 1:
        raise ClassMismatchError("the deterministic kernel handles exactly two matroids")
    return deterministic_kernel(M0, rest[0], w, k)


@dataclass(frozen=True)
class KernelRunner:
    """Picklable ``(instance, seed) -> Kernel`` callable, for trial harnesses."""

    alg: str
    T: int | None = None
    repeat: int = 1

    def __call__(self, inst, seed: int) -> Kernel:
        return kernelize(inst, self.alg, seed, self.T, self.repeat)
