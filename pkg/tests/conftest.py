import pytest
from hypothesis import HealthCheck, settings

from hfcone import fixtures

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def fx():
    return {name: fixtures.build(name) for name in fixtures.NAMES}
