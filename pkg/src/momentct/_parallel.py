"""Worker-count control for per-view parallel loops.

The environment variable ``MOMENT_TOMO_THREADS`` caps the number of
worker threads used when iterating over sinogram views (0 or unset means
automatic).  Views are computed independently and written back by index,
so results are bit-identical regardless of the worker count.
"""

import os
from concurrent.futures import ThreadPoolExecutor

_ENV_VAR = "MOMENT_TOMO_THREADS"


def worker_count() -> int:
    """Resolve the worker cap from the environment (minimum 1)."""
    raw = os.environ.get(_ENV_VAR, "0")
    try:
        requested = int(raw)
    except ValueError:
        requested = 0
    if requested <= 0:
        requested = os.cpu_count() or 1
    return max(1, requested)


def map_indexed(fn, n: int) -> list:
    """Evaluate ``fn(i)`` for ``i in range(n)``, results ordered by index."""
    workers = min(worker_count(), n) if n else 1
    if workers <= 1:
        return [fn(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(n)))
