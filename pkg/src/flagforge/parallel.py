"""Worker pool handed to the computational modules.

Modules never create threads or processes themselves: they receive a
``WorkerPool`` and call ``map``/``starmap`` on it. Results always come back
in input order, so output is identical for any worker count.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from itertools import starmap
from typing import Any, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")


class WorkerPool:
    """Ordered parallel map over a process pool; ``threads=1`` runs inline."""

    def __init__(self, threads: int = 1, chunksize: int = 4) -> None:
        if threads < 1:
            msg = f"threads must be >= 1, got {threads}"
            raise ValueError(msg)
        self.threads = threads
        self.chunksize = chunksize
        self._executor: ProcessPoolExecutor | None = None

    def _pool(self) -> ProcessPoolExecutor:
        if self._executor is None:
            logger.debug("starting process pool with %d workers", self.threads)
            self._executor = ProcessPoolExecutor(max_workers=self.threads)
        return self._executor

    def map(self, fn: Callable[[Any], T], items: Iterable[Any]) -> list[T]:
        items = list(items)
        if self.threads == 1 or len(items) < 2:
            return list(map(fn, items))
        return list(self._pool().map(fn, items, chunksize=self.chunksize))

    def starmap(self, fn: Callable[..., T], jobs: Iterable[tuple[Any, ...]]) -> list[T]:
        jobs = list(jobs)
        if self.threads == 1 or len(jobs) < 2:
            return list(starmap(fn, jobs))
        return list(self._pool().map(_Star(fn), jobs, chunksize=self.chunksize))

    def close(self) -> None:
        if self._executor is not None:
            self._executor.shutdown()
            self._executor = None

    def __enter__(self) -> WorkerPool:
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()


class _Star:
    """Picklable argument-unpacking wrapper."""

    def __init__(self, fn: Callable[..., Any]) -> None:
        self.fn = fn

    def __call__(self, args: tuple[Any, ...]) -> Any:
        return self.fn(*args)


_SERIAL = WorkerPool(1)


def default_pool() -> WorkerPool:
    return _SERIAL
