import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache_dir(tmp_path_factory):
    """Keep the on-disk block cache out of the user's home directory."""
    path = tmp_path_factory.mktemp("qfock-cache")
    old = os.environ.get("QFOCK_CACHE_DIR")
    os.environ["QFOCK_CACHE_DIR"] = str(path)
    yield path
    if old is None:
        os.environ.pop("QFOCK_CACHE_DIR", None)
    else:
        os.environ["QFOCK_CACHE_DIR"] = old
