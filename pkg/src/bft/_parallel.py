"""Optional thread fan-out, capped by the BFT_THREADS environment variable.

The default is sequential execution, which keeps runs deterministic and
avoids thread overhead at desk scale; results are returned in input order
either way.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

__all__ = ["thread_count", "parallel_map"]


def thread_count() -> int:
    raw = os.environ.get("BFT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn, items) -> list:
    items = list(items)
    workers = min(thread_count(), len(items)) or 1
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
