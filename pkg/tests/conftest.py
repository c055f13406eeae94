"""
Shared fixtures: isolated settings and a private results database.
"""

import pytest

from config import reset_settings


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """Each test sees default settings and its own results database."""
    for name in ("NECKLACE_ORACLE_CAP", "NECKLACE_SUBSET_CAP", "NECKLACE_DEBRUIJN_BUDGET",
                 "NECKLACE_LOG_LEVEL", "NECKLACE_LOG_FILE"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("NECKLACE_RESULTS_DB", str(tmp_path / "results.db"))
    # keep a developer's .env out of the tests
    monkeypatch.setattr("config.load_dotenv", lambda *args, **kwargs: False)
    reset_settings()
    yield
    reset_settings()
