"""
Resident-memory tracking for training epochs
"""
import gc
from contextlib import contextmanager
from typing import Dict, Optional

import psutil

from otemtl.utils.logging import get_logger

logger = get_logger(__name__)

MIB = 1024 * 1024


class MemoryMonitor:
    """Tracks process RSS around named operations and keeps the peak"""

    def __init__(self, max_memory: Optional[int] = None):
        # bytes; None disables the limit
        self.max_memory = max_memory
        self.process = psutil.Process()
        self.peak_rss = 0
        self.deltas: Dict[str, int] = {}

    def get_memory_usage(self) -> int:
        rss = self.process.memory_info().rss
        self.peak_rss = max(self.peak_rss, rss)
        return rss

    def check_memory(self) -> bool:
        """False when RSS is above ``max_memory``"""
        if self.max_memory is None:
            return True
        rss = self.get_memory_usage()
        if rss > self.max_memory:
            logger.warning(f"RSS {rss / MIB:.1f} MiB exceeds limit {self.max_memory / MIB:.1f} MiB")
            return False
        return True

    @contextmanager
    def monitor_operation(self, operation_name: str):
        before = self.get_memory_usage()
        try:
            yield self
        finally:
            after = self.get_memory_usage()
            self.deltas[operation_name] = after - before
            logger.debug(f"{operation_name}: rss {after / MIB:.1f} MiB "
                         f"({(after - before) / MIB:+.1f}), peak {self.peak_rss / MIB:.1f} MiB")
            if not self.check_memory():
                # per-sentence caches of the finished epoch are garbage by now
                gc.collect()


memory_monitor = MemoryMonitor()
