import pytest
from hypothesis import settings

from rankpke import ExtField, SeededRng

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def f16():
    return ExtField(2, 4)


@pytest.fixture(scope="session")
def f27():
    return ExtField(3, 3)


@pytest.fixture
def rng():
    return SeededRng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
