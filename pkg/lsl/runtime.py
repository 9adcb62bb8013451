# lsl/runtime.py
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from functools import wraps
from typing import Any, Callable, Dict, Iterable, List, Optional, TypeVar

import psutil

from lsl.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def timing_decorator(func):
    """Measure execution time of function."""

    @wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()
        result = func(*args, **kwargs)
        exec_time = time.perf_counter() - start_time
        return result, exec_time

    return wrapper


def get_system_metrics() -> Dict[str, Any]:
    """Get current system metrics."""
    try:
        return {
            "cpu_count": psutil.cpu_count(logical=True),
            "cpu_percent": psutil.cpu_percent(),
            "memory_percent": psutil.virtual_memory().percent,
        }
    except Exception as e:
        logger.exception(f"System metrics collection failed: {e}")
        return {}


def log_host_metrics() -> None:
    """Host metrics go to the log only; reports stay byte-deterministic."""
    metrics = get_system_metrics()
    if metrics:
        logger.info(
            f"Host: {metrics['cpu_count']} cpus, cpu {metrics['cpu_percent']}%, "
            f"memory {metrics['memory_percent']}%, threads {worker_count()}"
        )


def worker_count(requested: Optional[int] = None) -> int:
    """Thread cap from LSL_THREADS; never above the logical cpu count."""
    cap = settings.threads if requested is None else max(1, requested)
    cpus = psutil.cpu_count(logical=True) or 1
    return max(1, min(cap, cpus))


def parallel_map(
    fn: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None
) -> List[R]:
    """Map in input order; single-threaded unless LSL_THREADS allows more."""
    items = list(items)
    workers = worker_count(threads)
    if workers == 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
