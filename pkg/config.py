"""
Necklace Centres - Configuration
Settings read from the environment, after merging a local .env file.
"""

import logging
import os
from dataclasses import dataclass
from threading import Lock
from typing import Optional

from dotenv import load_dotenv

from core.errors import InvalidInputError

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 1_000_000
DEFAULT_SUBSET_CAP = 5_000_000
DEFAULT_DEBRUIJN_BUDGET = 2 ** 24


@dataclass(frozen=True)
class Settings:
    """Resource caps and logging defaults."""
    oracle_cap: int = DEFAULT_ORACLE_CAP
    subset_cap: int = DEFAULT_SUBSET_CAP
    debruijn_budget: int = DEFAULT_DEBRUIJN_BUDGET
    log_level: str = "INFO"
    log_file: Optional[str] = None
    results_db: str = "data/results.db"


def _int_env(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InvalidInputError(f"{name}={raw!r} is not an integer") from None
    if value < 1:
        raise InvalidInputError(f"{name} must be positive, got {value}")
    return value


def load_settings() -> Settings:
    """Build settings from NECKLACE_* environment variables."""
    load_dotenv()
    return Settings(
        oracle_cap=_int_env("NECKLACE_ORACLE_CAP", DEFAULT_ORACLE_CAP),
        subset_cap=_int_env("NECKLACE_SUBSET_CAP", DEFAULT_SUBSET_CAP),
        debruijn_budget=_int_env("NECKLACE_DEBRUIJN_BUDGET", DEFAULT_DEBRUIJN_BUDGET),
        log_level=os.environ.get("NECKLACE_LOG_LEVEL", "INFO").upper(),
        log_file=os.environ.get("NECKLACE_LOG_FILE") or None,
        results_db=os.environ.get("NECKLACE_RESULTS_DB", "data/results.db"),
    )


# Singleton instance
_settings: Optional[Settings] = None
_settings_lock = Lock()


def get_settings() -> Settings:
    """Get or create the process-wide settings."""
    global _settings
    if _settings is None:
        with _settings_lock:
            if _settings is None:
                _settings = load_settings()
                logger.debug(f"Settings loaded: {_settings}")
    return _settings


def reset_settings() -> None:
    """Forget cached settings so the next call re-reads the environment."""
    global _settings
    with _settings_lock:
        _settings = None
