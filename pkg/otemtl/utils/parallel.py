"""
Running independent jobs (one training run per seed) side by side
"""
import os
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from typing import Any, Callable, List, Optional, Sequence

from otemtl.utils.logging import get_logger

logger = get_logger(__name__)


class WorkerPool:
    """Executor wrapper used as ``with WorkerPool(n) as pool: pool.map(...)``"""

    def __init__(self, num_workers: int = 1, use_threads: bool = False):
        self.num_workers = max(1, min(num_workers, os.cpu_count() or 1))
        self.use_threads = use_threads
        self._executor: Optional[Executor] = None

    def __enter__(self) -> "WorkerPool":
        executor_cls = ThreadPoolExecutor if self.use_threads else ProcessPoolExecutor
        self._executor = executor_cls(max_workers=self.num_workers)
        logger.info(f"Running jobs on {self.num_workers} "
                    f"{'threads' if self.use_threads else 'processes'}")
        return self

    def __exit__(self, *exc_info):
        if self._executor is not None:
            self._executor.shutdown()
            self._executor = None

    def map(self, func: Callable, items: Sequence[Any]) -> List[Any]:
        """Results in input order; the first failing job is logged and re-raised"""
        if self._executor is None:
            raise RuntimeError("WorkerPool used outside its with-block")
        futures = [self._executor.submit(func, item) for item in items]
        results = []
        for index, future in enumerate(futures):
            try:
                results.append(future.result())
            except Exception:
                logger.error(f"job {index} of {len(futures)} failed")
                for pending in futures[index + 1:]:
                    pending.cancel()
                raise
        return results


def parallel_map(func: Callable, items: Sequence[Any],
                 num_workers: int = 1, use_threads: bool = False) -> List[Any]:
    if num_workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with WorkerPool(min(num_workers, len(items)), use_threads=use_threads) as pool:
        return pool.map(func, items)
