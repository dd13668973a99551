"""Internal parallelism cap.

STREAM_THREADS limits the worker threads used for per-video/per-dimension
work.  Cells are independent and written into disjoint output slots, so
results are identical for any thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable


def thread_count() -> int:
    raw = os.environ.get("STREAM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def run_chunks(work: Callable[[slice], None], chunks: Iterable[slice]) -> None:
    """Run independent chunk jobs, threaded when STREAM_THREADS > 1."""
    chunks = list(chunks)
    n = thread_count()
    if n <= 1 or len(chunks) <= 1:
        for sl in chunks:
            work(sl)
        return
    with ThreadPoolExecutor(max_workers=min(n, len(chunks))) as pool:
        for fut in [pool.submit(work, sl) for sl in chunks]:
            fut.result()
