"""
Runtime configuration loaded from the environment (and an optional .env file).
"""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv


DEFAULT_AUTO_DIGIT_THRESHOLD = 7


@dataclass
class Settings:
    """Process-wide settings. CLI flags override these."""
    lexicon_dir: Optional[Path] = None
    log_level: str = "WARNING"
    log_file: Optional[Path] = None
    number_policy: str = "auto"
    auto_digit_threshold: int = DEFAULT_AUTO_DIGIT_THRESHOLD


_settings: Optional[Settings] = None


def _env_path(name: str) -> Optional[Path]:
    value = os.getenv(name, "").strip()
    return Path(value).expanduser() if value else None


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


def get_settings() -> Settings:
    """
    Get or create the global settings.

    Reads ``BANGLA_IPA_*`` variables after loading a ``.env`` file
    from the working directory, if one exists.

    Returns:
        Settings instance
    """
    global _settings
    if _settings is None:
        load_dotenv()
        _settings = Settings(
            lexicon_dir=_env_path("BANGLA_IPA_LEXICON_DIR"),
            log_level=os.getenv("BANGLA_IPA_LOG_LEVEL", "WARNING").upper(),
            log_file=_env_path("BANGLA_IPA_LOG_FILE"),
            number_policy=os.getenv("BANGLA_IPA_NUMBER_POLICY", "auto").lower(),
            auto_digit_threshold=_env_int(
                "BANGLA_IPA_AUTO_DIGIT_THRESHOLD", DEFAULT_AUTO_DIGIT_THRESHOLD
            ),
        )
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next call re-reads the environment."""
    global _settings
    _settings = None
