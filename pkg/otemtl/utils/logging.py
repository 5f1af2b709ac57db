"""
Logging setup: plain console lines, JSON lines in the log file
"""
import json
import logging
import os
import sys
import time
from datetime import datetime
from functools import wraps
from typing import Optional

from otemtl.config.config import LOG_LEVELS, config
from otemtl.core.errors import ConfigError

LOG_LEVEL_ENV = "OTE_LOG_LEVEL"
_HANDLER_TAG = "_otemtl_handler"

# LogRecord attributes copied into the JSON line when a caller passes them via ``extra``
CONTEXT_FIELDS = ("seed", "epoch", "loss", "val_f1")


class JsonFormatter(logging.Formatter):
    """One JSON object per line; run context from ``extra`` becomes top-level keys"""

    def format(self, record: logging.LogRecord) -> str:
        data = {
            "timestamp": datetime.fromtimestamp(record.created).isoformat(timespec="milliseconds"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "where": f"{record.module}:{record.funcName}:{record.lineno}",
        }
        for field in CONTEXT_FIELDS:
            if hasattr(record, field):
                data[field] = getattr(record, field)
        if record.exc_info:
            data["exception"] = self.formatException(record.exc_info)
        return json.dumps(data, default=str)


def resolve_level(level: Optional[str] = None) -> str:
    """Map error|warn|info|debug (flag, then OTE_LOG_LEVEL, then config) to a logging level name"""
    name = level or os.environ.get(LOG_LEVEL_ENV) or config.logging.log_level
    try:
        return LOG_LEVELS[name.lower()]
    except KeyError:
        raise ConfigError(f"unknown log level {name!r}; expected one of error, warn, info, debug")


def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None,
                  log_format: Optional[str] = None):
    """Install console and optional JSON file handlers on the root logger"""
    level_name = resolve_level(level)
    log_file = log_file or config.logging.log_file

    root_logger = logging.getLogger()
    root_logger.setLevel(level_name)

    # Replace handlers from an earlier call (the CLI may run several times per process)
    for handler in list(root_logger.handlers):
        if getattr(handler, _HANDLER_TAG, False):
            root_logger.removeHandler(handler)
            handler.close()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level_name)
    console_handler.setFormatter(logging.Formatter(log_format or config.logging.log_format))
    setattr(console_handler, _HANDLER_TAG, True)
    root_logger.addHandler(console_handler)

    if log_file:
        log_dir = os.path.dirname(os.path.abspath(log_file))
        os.makedirs(log_dir, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(JsonFormatter())
        setattr(file_handler, _HANDLER_TAG, True)
        root_logger.addHandler(file_handler)


def log_execution_time(logger: Optional[logging.Logger] = None):
    """Log wall time of each call at DEBUG"""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                (logger or logging.getLogger(func.__module__)).debug(
                    f"{func.__name__} executed in {time.perf_counter() - start:.3f}s")
        return wrapper
    return decorator


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
