import random

import pytest
from hypothesis import HealthCheck, settings

from bitorbit import kernels
from bitorbit.bitword import BitWord
from bitorbit.streams import StreamStore

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES = []


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    """Run a test once per available kernel backend."""
    previous = kernels.backend
    kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(previous)


@pytest.fixture
def store():
    """A cold named-stream store, independent of the process-wide one."""
    return StreamStore()


@pytest.fixture
def rng():
    return random.Random(20091015)


def random_word(rng, n):
    return BitWord(rng.getrandbits(n) if n else 0, n)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
