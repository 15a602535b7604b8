"""Deterministic parallel map over independent pure tasks."""

import os
from concurrent.futures import ThreadPoolExecutor

THREADS_ENV = "HARDY_CHAOS_THREADS"


def thread_cap():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def parallel_map(fn, items, threads=None):
    """``[fn(x) for x in items]``, optionally on a thread pool; results keep
    input order."""
    items = list(items)
    n = thread_cap() if threads is None else max(1, int(threads))
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
