import pytest


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path_factory, monkeypatch):
    """Keep the short-vector cache inside the test session."""
    cache = tmp_path_factory.getbasetemp() / "hkfl-cache"
    monkeypatch.setenv("HKFL_CACHE_DIR", str(cache))
