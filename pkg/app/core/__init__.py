from .config import Settings, settings
from .errors import (
    CsfError,
    DeadlineExceeded,
    FormatError,
    NodeLimitExceeded,
    ResourceError,
    SubsetLimitExceeded,
    UsageError,
)
from .logging import logger, setup_logging
from .metrics import TimingContext, metrics, time_operation

__all__ = [
    "CsfError",
    "DeadlineExceeded",
    "FormatError",
    "NodeLimitExceeded",
    "ResourceError",
    "Settings",
    "SubsetLimitExceeded",
    "TimingContext",
    "UsageError",
    "logger",
    "metrics",
    "settings",
    "setup_logging",
    "time_operation",
]
