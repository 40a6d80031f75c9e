import os

import pytest

from pqcbound import EntropyCache


def pytest_collection_modifyitems(config, items):
    if os.environ.get("PQC_SLOW"):
        return
    skip = pytest.mark.skip(reason="long-running optional check; set PQC_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


_CACHES: dict = {}


@pytest.fixture
def shared_cache():
    """Session-wide entropy caches keyed by (f, q); avoids re-enumeration."""

    def get(f, q=2):
        key = (f, q)
        if key not in _CACHES:
            _CACHES[key] = EntropyCache(f, q)
        return _CACHES[key]

    return get
