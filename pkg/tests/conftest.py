import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from heisenfield import HGroup, field_make, wrap  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def gf():
    cache = {}

    def make(p):
        if p not in cache:
            cache[p] = field_make("prime", p)
        return cache[p]

    return make


@pytest.fixture(scope="session")
def host(gf):
    cache = {}

    def make(p):
        if p not in cache:
            cache[p] = wrap(HGroup(gf(p)))
        return cache[p]

    return make


@pytest.fixture(scope="session")
def gf4():
    return field_make("ext", 2, 2, "x^2+x+1")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: runs longer than a few seconds")
