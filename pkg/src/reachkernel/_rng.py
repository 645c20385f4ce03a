"""Counter-based random streams keyed by (seed, repetition, stream, round)."""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def check_seed(seed) -> int:
    seed = int(seed)
    if seed < 0 or seed > _MASK64:
        raise ValueError(f"seed must be a 64-bit non-negative integer, got {seed}")
    return seed


class RoundStreams:
    """
    Hands out a generator positioned at counter ``(0, rep, stream, round)``
    under key ``seed``. The draws for a given (round, stream) never depend on
    which other rounds were evaluated, or in what order.

    A single Philox bit generator is repositioned on every call, so a returned
    generator is only valid until the next ``get``.
    """

    def __init__(self, seed: int, rep: int = 0):
        self.seed = check_seed(seed)
        self.rep = int(rep)
        self._bitgen = np.random.Philox(key=self.seed)
        self._key = self._bitgen.state["state"]["key"].copy()
        self._gen = np.random.Generator(self._bitgen)

    def get(self, round_index: int, stream: int) -> np.random.Generator:
        self._bitgen.state = {
            "bit_generator": "Philox",
            "state": {
                "counter": np.array([0, self.rep, stream, round_index], dtype=np.uint64),
                "key": self._key,
            },
            "buffer": np.zeros(4, dtype=np.uint64),
            "buffer_pos": 4,
            "has_uint32": 0,
            "uinteger": 0,
        }
        return self._gen


def derived_seeds(seed: int, count: int) -> list[int]:
    """``count`` independent 64-bit seeds derived from ``seed``."""
    state = np.random.SeedSequence(check_seed(seed)).generate_state(count, dtype=np.uint64)
    return [int(s) for s in state]
