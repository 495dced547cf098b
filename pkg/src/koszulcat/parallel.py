"""Cell-level parallel map with deterministic, order-preserving results.

Computations over independent (object, degree) cells may fan out across a
thread pool; results are collected in input order, so reports are
byte-identical regardless of the thread count.  The thread count comes from
the --threads flag, falling back to the KOSZULCAT_THREADS variable, then 1.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

from .errors import PreconditionError

ENV_VAR = "KOSZULCAT_THREADS"


def resolve_threads(flag_value=None) -> int:
    if flag_value is not None:
        n = int(flag_value)
    else:
        raw = os.environ.get(ENV_VAR)
        n = int(raw) if raw else 1
    if n < 1:
        raise PreconditionError("thread count must be positive, got %d" % n)
    return n


def make_parallel_map(threads: int):
    """An order-preserving map; a plain map when single-threaded."""
    if threads <= 1:
        return lambda fn, items: list(map(fn, items))

    def pmap(fn, items):
        items = list(items)
        if not items:
            return []
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))

    return pmap
