"""
Exception hierarchy shared by every subsystem.

Each class maps onto one CLI exit code: format and usage errors exit 1,
resource errors exit 3. An empty solution is a result, not an error.
"""
from typing import Optional


class CsfError(Exception):
    """Base class for all toolkit errors"""


class FormatError(CsfError, ValueError):
    """Malformed input text (BLIF-lite, AUT, manifest) or duplicate names"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UsageError(CsfError, ValueError):
    """A documented precondition was violated by the caller"""


class ResourceError(CsfError, RuntimeError):
    """A computation was aborted because it exceeded a configured limit"""


class NodeLimitExceeded(ResourceError):
    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"decision diagram node limit exceeded ({limit} nodes)")


class SubsetLimitExceeded(ResourceError):
    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"subset construction limit exceeded ({limit} subset states)")


class DeadlineExceeded(ResourceError):
    def __init__(self, timeout_s: Optional[float] = None):
        self.timeout_s = timeout_s
        detail = f" ({timeout_s:g} s)" if timeout_s is not None else ""
        super().__init__(f"time limit exceeded{detail}")
