import pytest

from modroot.braid import enumerate_roots
from modroot.cluster import enumerate_fan
from modroot.fields import build_tower
from modroot.quiver import load_fixture


@pytest.fixture(scope="session")
def a3():
    return load_fixture("a3")


@pytest.fixture(scope="session")
def b3():
    return load_fixture("b3_real")


@pytest.fixture(scope="session")
def b3q():
    return load_fixture("b3_quat")


@pytest.fixture(scope="session")
def g2():
    return load_fixture("g2ish")


@pytest.fixture(scope="session")
def roots_of():
    cache = {}

    def get(q):
        if q.name not in cache:
            cache[q.name] = enumerate_roots(q)
        return cache[q.name]

    return get


@pytest.fixture(scope="session")
def fan_of():
    cache = {}

    def get(q):
        if q.name not in cache:
            cache[q.name] = enumerate_fan(q)
        return cache[q.name]

    return get


@pytest.fixture(scope="session")
def tower_of():
    cache = {}

    def get(q, size=2):
        key = (q.name, size)
        if key not in cache:
            cache[key] = build_tower(q, size)
        return cache[key]

    return get
