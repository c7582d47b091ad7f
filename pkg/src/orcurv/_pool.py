"""Bounded process pool for per-pair and per-vertex fan-out over one graph."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

_GRAPH = None


def _install(graph) -> None:
    global _GRAPH
    _GRAPH = graph


def _call(task):
    fn, item = task
    return fn(_GRAPH, item)


def map_over(graph, fn: Callable, items: Sequence, workers: int = 1) -> list:
    """``[fn(graph, item) for item in items]``, optionally across worker processes.

    ``fn`` must be a module-level function.  Results keep the input order.
    """
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(graph, item) for item in items]
    chunk = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers, initializer=_install, initargs=(graph,)) as pool:
        return list(pool.map(_call, [(fn, item) for item in items], chunksize=chunk))
