"""Reachable kernels for weighted matroid intersection, with a brute-force verifier."""

__version__ = "0.1.0"

from .deterministic import deterministic_kernel
from .dispatch import ALGORITHMS, KernelRunner, kernelize
from .generators import generate, random_matroid
from .greedy import GreedyResult, greedy
from .instances import IntersectionInstance, MatchingInstance
from .io import InstanceFormatError, parse_instance, write_instance
from .laminar import NormalizationWarning, default_rounds_laminar, find_candidate, laminar_kernel
from .matching import default_rounds_matching, matching_kernel
from .matroids import (
    Cographic,
    Graphic,
    Laminar,
    LaminarFamily,
    MalformedInputError,
    Matroid,
    NormalizationError,
    OracleMatroid,
    Partition,
    Transversal,
    Uniform,
    check_matroid_axioms,
)
from .sampling import (
    ClassMismatchError,
    CoverabilityError,
    Kernel,
    coverable_kernel,
    default_rounds_coverable,
    default_rounds_partition,
    g_value,
    partition_kernel,
)
from .transversal import LiftTooLargeError, transversal_kernel
from .verify import (
    Budget,
    BudgetExceededError,
    check_coverable,
    check_reachability,
    check_single_exc,
    enumerate_feasible,
    estimate_success_rate,
    opt_value,
)
