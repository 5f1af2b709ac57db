from .logging import get_logger, log_execution_time, setup_logging
from .memory import MemoryMonitor, memory_monitor
from .parallel import WorkerPool, parallel_map

__all__ = ['get_logger', 'log_execution_time', 'setup_logging', 'MemoryMonitor',
           'memory_monitor', 'WorkerPool', 'parallel_map']
