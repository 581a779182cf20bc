"""
Observability module for logging and run metrics.
"""

from .logger import IpaLogger, get_logger, set_console_level
from .metric import MetricsCollector, get_metrics

__all__ = [
    "IpaLogger",
    "get_logger",
    "set_console_level",
    "MetricsCollector",
    "get_metrics",
]
