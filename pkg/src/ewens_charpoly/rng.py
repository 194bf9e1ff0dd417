"""Counter-style splitmix64 streams, one per Monte Carlo replica.

Replica ``i`` of an experiment seeded with ``seed`` draws from a private
stream whose initial state is ``mix(mix(seed) ^ i)``.  Because a replica
never touches another replica's stream, ensembles are identical whatever
the number of worker threads.
"""

import numpy as np
from numba import njit

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(x: int) -> int:
    """splitmix64 finalizer on a Python int."""
    x &= MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def replica_state(seed: int, index: int) -> int:
    return mix64(mix64(seed) ^ (index & MASK64))


def child_seed(seed: int, tag: int) -> int:
    """Independent seed for a sub-experiment (e.g. finite-n vs limit draws)."""
    return mix64(seed ^ mix64(GOLDEN * (tag + 1)))


@njit(cache=True)
def _mix(x):
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


@njit(cache=True)
def stream_start(seed_mixed, index):
    return _mix(seed_mixed ^ np.uint64(index))


@njit(cache=True)
def next_uniform(state):
    """Advance ``state``; return (new_state, u) with u uniform on [0, 1)."""
    state = state + np.uint64(GOLDEN)
    z = _mix(state)
    return state, (z >> np.uint64(11)) * (1.0 / 9007199254740992.0)
