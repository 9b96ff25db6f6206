import pytest
from hypothesis import HealthCheck, settings

from cohsupport.algebra import PolyRing
from cohsupport.fixtures import fixture

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def rings():
    return {name: fixture(name) for name in "ABCDE"}


@pytest.fixture
def Q3():
    return PolyRing(101, ("x", "y", "z"))
