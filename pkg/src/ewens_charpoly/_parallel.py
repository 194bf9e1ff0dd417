from contextlib import contextmanager

import numba

# The system TBB is too old for numba; skip it rather than warn on every run.
numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


@contextmanager
def workers(n=None):
    """Temporarily run numba parallel loops on ``n`` threads (None: leave as is)."""
    if n is None:
        yield
        return
    old = numba.get_num_threads()
    numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))
    try:
        yield
    finally:
        numba.set_num_threads(old)
