"""
Structured logging for bangla-ipa.
Writes to:
  - Console (stderr) : level from BANGLA_IPA_LOG_LEVEL (default WARNING)
  - Log file         : DEBUG+, only when BANGLA_IPA_LOG_FILE is set

Stdout is reserved for pipeline output, so nothing here ever writes to it.
"""

import logging
import sys
from typing import Dict, Optional

from ..core.config import get_settings


ROOT_LOGGER_NAME = "bangla_ipa"

CONSOLE_FORMAT = '%(asctime)s | %(levelname)-7s | %(name)s | %(message)s'
FILE_FORMAT = '%(asctime)s | %(levelname)-7s | %(name)-25s | %(message)s'


class _StderrHandler(logging.StreamHandler):
    """StreamHandler bound to whatever sys.stderr is at emit time."""

    def __init__(self):
        super().__init__(sys.stderr)

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, value):
        pass


class IpaLogger:
    """
    Logger wrapper with stage-prefixed messages.
    One instance per name; handlers are attached once on the package root logger.
    """

    _instances: Dict[str, "IpaLogger"] = {}
    _console_handler: Optional[logging.Handler] = None

    def __init__(self, name: str = ROOT_LOGGER_NAME):
        if name != ROOT_LOGGER_NAME and not name.startswith(ROOT_LOGGER_NAME + "."):
            name = f"{ROOT_LOGGER_NAME}.{name}"
        self.logger = logging.getLogger(name)
        root = logging.getLogger(ROOT_LOGGER_NAME)

        # Avoid duplicate handlers
        if not root.handlers:
            settings = get_settings()
            root.setLevel(logging.DEBUG)
            root.propagate = False

            console_handler = _StderrHandler()
            console_handler.setLevel(_level(settings.log_level))
            console_handler.setFormatter(
                logging.Formatter(CONSOLE_FORMAT, datefmt='%H:%M:%S')
            )
            root.addHandler(console_handler)
            IpaLogger._console_handler = console_handler

            if settings.log_file:
                try:
                    file_handler = logging.FileHandler(
                        settings.log_file, mode='a', encoding='utf-8'
                    )
                    file_handler.setLevel(logging.DEBUG)
                    file_handler.setFormatter(
                        logging.Formatter(FILE_FORMAT, datefmt='%Y-%m-%d %H:%M:%S')
                    )
                    root.addHandler(file_handler)
                except OSError as e:
                    root.warning(f"Could not open log file {settings.log_file}: {e}")

    # --- Standard log methods ---
    def info(self, message: str, stage: Optional[str] = None):
        """Log info message."""
        self.logger.info(_prefixed(message, stage))

    def warning(self, message: str, stage: Optional[str] = None):
        """Log warning message."""
        self.logger.warning(_prefixed(message, stage))

    def error(self, message: str, stage: Optional[str] = None, exc_info: bool = False):
        """Log error message."""
        self.logger.error(_prefixed(message, stage), exc_info=exc_info)

    def debug(self, message: str, stage: Optional[str] = None):
        """Log debug message."""
        self.logger.debug(_prefixed(message, stage))

    # --- Domain helpers ---
    def rule_applied(self, rule_id: str, word: str):
        """Log a rule firing on a word (DEBUG)."""
        self.debug(f"{rule_id} -> {word}", stage="Rules")

    def lexicon_hit(self, surface: str, tag: str):
        """Log a lexicon lookup hit (DEBUG)."""
        self.debug(f"hit {surface} ({tag})", stage="Lexicon")

    def run_start(self, command: str):
        """Log the start of a CLI command."""
        self.info(f">>> STARTED: {command}", stage="CLI")

    def run_complete(self, command: str, duration_ms: Optional[float] = None):
        """Log completion of a CLI command."""
        duration_str = f" ({duration_ms:.0f}ms)" if duration_ms else ""
        self.info(f"<<< COMPLETED: {command}{duration_str}", stage="CLI")


def _prefixed(message: str, stage: Optional[str]) -> str:
    return f"[{stage}] {message}" if stage else message


def _level(name: str) -> int:
    level = logging.getLevelName(name.upper())
    return level if isinstance(level, int) else logging.WARNING


def get_logger(name: str = ROOT_LOGGER_NAME) -> IpaLogger:
    """
    Get or create a logger instance.
    Uses singleton pattern per name.
    """
    if name not in IpaLogger._instances:
        IpaLogger._instances[name] = IpaLogger(name)
    return IpaLogger._instances[name]


def set_console_level(level: str) -> None:
    """Change the console threshold at runtime (used by -v / -q)."""
    get_logger()
    if IpaLogger._console_handler is not None:
        IpaLogger._console_handler.setLevel(_level(level))
