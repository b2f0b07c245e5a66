import functools
import inspect
import threading
import time
from collections import deque
from typing import Any, Dict, Optional


class MetricsCollector:
    """Counters, histograms and gauges for solver instrumentation"""

    HISTOGRAM_WINDOW = 1000

    def __init__(self):
        self._metrics: Dict[str, Dict[str, Any]] = {}
        self._lock = threading.Lock()
        self._start_time = time.perf_counter()

    def increment_counter(self, name: str, value: int = 1, tags: Optional[Dict[str, str]] = None):
        """Increment a counter metric"""
        with self._lock:
            key = self._get_metric_key(name, tags)
            metric = self._metrics.setdefault(key, {"type": "counter", "value": 0, "tags": tags or {}})
            metric["value"] += value

    def record_histogram(self, name: str, value: float, tags: Optional[Dict[str, str]] = None):
        """Record a histogram sample (durations, sizes)"""
        with self._lock:
            key = self._get_metric_key(name, tags)
            metric = self._metrics.get(key)
            if metric is None:
                metric = {
                    "type": "histogram",
                    "values": deque(maxlen=self.HISTOGRAM_WINDOW),
                    "tags": tags or {},
                    "count": 0,
                    "sum": 0.0,
                    "min": float("inf"),
                    "max": float("-inf"),
                }
                self._metrics[key] = metric
            metric["values"].append(value)
            metric["count"] += 1
            metric["sum"] += value
            metric["min"] = min(metric["min"], value)
            metric["max"] = max(metric["max"], value)

    def set_gauge(self, name: str, value: float, tags: Optional[Dict[str, str]] = None):
        """Set a gauge metric (current state)"""
        with self._lock:
            key = self._get_metric_key(name, tags)
            self._metrics[key] = {"type": "gauge", "value": value, "tags": tags or {}}

    def record_timing(self, name: str, duration: float, tags: Optional[Dict[str, str]] = None):
        """Record a duration given in seconds"""
        self.record_histogram(f"{name}_duration_ms", duration * 1000, tags)

    def counter(self, name: str, tags: Optional[Dict[str, str]] = None) -> int:
        """Current value of a counter, 0 when never incremented"""
        with self._lock:
            metric = self._metrics.get(self._get_metric_key(name, tags))
            return metric["value"] if metric and metric["type"] == "counter" else 0

    def get_metrics(self) -> Dict[str, Any]:
        """Snapshot of all collected metrics"""
        with self._lock:
            snapshot = {}
            for key, metric in self._metrics.items():
                if metric["type"] != "histogram":
                    snapshot[key] = dict(metric)
                    continue
                values = sorted(metric["values"])
                if not values:
                    continue
                snapshot[key] = {
                    "type": "histogram",
                    "count": metric["count"],
                    "sum": metric["sum"],
                    "avg": metric["sum"] / metric["count"],
                    "min": metric["min"],
                    "max": metric["max"],
                    "p50": values[len(values) // 2],
                    "p95": values[int(len(values) * 0.95)],
                    "tags": metric["tags"],
                }
            snapshot["process_uptime_seconds"] = {
                "type": "gauge",
                "value": time.perf_counter() - self._start_time,
                "tags": {},
            }
            return snapshot

    def reset_metrics(self):
        """Reset all metrics"""
        with self._lock:
            self._metrics.clear()

    def _get_metric_key(self, name: str, tags: Optional[Dict[str, str]]) -> str:
        if not tags:
            return name
        tag_str = ",".join(f"{k}={v}" for k, v in sorted(tags.items()))
        return f"{name}|{tag_str}"


# Global metrics instance
metrics = MetricsCollector()


class TimingContext:
    """Context manager timing a block and counting its outcome"""

    def __init__(self, metrics_collector: MetricsCollector, name: str, tags: Optional[Dict[str, str]] = None):
        self.metrics = metrics_collector
        self.name = name
        self.tags = tags
        self.start_time = None
        self.elapsed = 0.0

    def __enter__(self):
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.elapsed = time.perf_counter() - self.start_time
        self.metrics.record_timing(self.name, self.elapsed, self.tags)

        tags_with_status = dict(self.tags or {})
        tags_with_status["status"] = "error" if exc_type else "success"
        self.metrics.increment_counter(f"{self.name}_total", 1, tags_with_status)


def time_operation(name: str, tags: Optional[Dict[str, str]] = None):
    """Decorator for timing function calls"""
    def decorator(func):
        if inspect.iscoroutinefunction(func):
            @functools.wraps(func)
            async def async_wrapper(*args, **kwargs):
                with TimingContext(metrics, name, tags):
                    return await func(*args, **kwargs)
            return async_wrapper

        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            with TimingContext(metrics, name, tags):
                return func(*args, **kwargs)
        return wrapper
    return decorator
