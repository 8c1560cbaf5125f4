import os
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
SHARED_CACHE = REPO_ROOT / ".petring_cache"


@pytest.fixture(scope="session")
def shared_cache_dir():
    """Repo-local Smith-form cache shared across tests and runs."""
    SHARED_CACHE.mkdir(exist_ok=True)
    return SHARED_CACHE


@pytest.fixture(scope="session")
def shared_cache(shared_cache_dir):
    from petring.cache import JsonCache

    return JsonCache(shared_cache_dir)


@pytest.fixture()
def cli_env(shared_cache_dir):
    env = dict(os.environ)
    env["PETRING_CACHE_DIR"] = str(shared_cache_dir)
    return env
