"""Timing, deadlines and progress bars for learning runs and benchmark sweeps"""

import logging
import time
from contextlib import contextmanager
from typing import Iterable, Iterator, Optional, TypeVar

logger = logging.getLogger("strchc")

try:
    from tqdm import tqdm
    TQDM_AVAILABLE = True
except ImportError:
    TQDM_AVAILABLE = False
    logger.info("tqdm not available, using log-based progress tracking")

T = TypeVar("T")


class ProgressTracker:
    """tqdm bar when available, periodic log lines otherwise"""

    def __init__(self, total: int, description: str = "Processing",
                 use_tqdm: bool = True, log_interval: int = 10):
        self.total = total
        self.description = description
        self.current = 0
        self.start_time = time.time()
        self.last_log_time = self.start_time
        self.log_interval = log_interval
        self.use_tqdm = use_tqdm and TQDM_AVAILABLE
        if self.use_tqdm:
            self.pbar = tqdm(total=total, desc=description, unit="runs")
        else:
            self.pbar = None
            logger.info(f"Starting {description}: 0/{total}")

    def update(self, increment: int = 1, message: Optional[str] = None):
        self.current += increment
        if self.pbar is not None:
            if message:
                self.pbar.set_postfix_str(message)
            self.pbar.update(increment)
            return
        now = time.time()
        if now - self.last_log_time >= self.log_interval or self.current >= self.total:
            text = f"{self.description}: {self.current}/{self.total}"
            if message:
                text += f" | {message}"
            logger.info(text)
            self.last_log_time = now

    def close(self):
        if self.pbar is not None:
            self.pbar.close()
        else:
            elapsed = time.time() - self.start_time
            logger.info(f"Completed {self.description}: {self.current}/{self.total} in {elapsed:.1f}s")

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()


class OperationTimer:
    """Wall-clock timer that logs its duration when stopped"""

    def __init__(self, operation_name: str, log_start: bool = True, level: int = logging.INFO):
        self.operation_name = operation_name
        self.level = level
        self.start_time: Optional[float] = None
        self.end_time: Optional[float] = None
        if log_start:
            logger.log(level, f"Starting {operation_name}...")

    def start(self) -> "OperationTimer":
        self.start_time = time.perf_counter()
        return self

    def stop(self) -> float:
        self.end_time = time.perf_counter()
        duration = self.end_time - self.start_time
        logger.log(self.level, f"Completed {self.operation_name} in {duration:.2f} seconds")
        return duration

    @property
    def duration(self) -> Optional[float]:
        if self.start_time is None:
            return None
        return (self.end_time or time.perf_counter()) - self.start_time

    def __enter__(self):
        return self.start()

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.stop()


class Deadline:
    """Wall-clock budget shared by the phases of one run"""

    def __init__(self, seconds: float):
        self.seconds = seconds
        self.start = time.perf_counter()

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start

    @property
    def remaining(self) -> float:
        return max(self.seconds - self.elapsed, 0.0)

    def expired(self) -> bool:
        return self.elapsed >= self.seconds


@contextmanager
def progress_tracker(total: int, description: str = "Processing", **kwargs):
    tracker = ProgressTracker(total, description, **kwargs)
    try:
        yield tracker
    finally:
        tracker.close()


@contextmanager
def operation_timer(operation_name: str, level: int = logging.INFO):
    timer = OperationTimer(operation_name, level=level)
    try:
        yield timer.start()
    finally:
        timer.stop()


def track_progress(iterable: Iterable[T], description: str = "Processing", **kwargs) -> Iterator[T]:
    items = iterable if hasattr(iterable, "__len__") else list(iterable)
    with progress_tracker(len(items), description, **kwargs) as tracker:
        for item in items:
            yield item
            tracker.update(1)
