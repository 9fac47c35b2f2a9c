import os


def thread_count():
    """Worker threads from ``BESOV_THREADS`` (default: hardware parallelism)."""
    raw = os.environ.get("BESOV_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1
