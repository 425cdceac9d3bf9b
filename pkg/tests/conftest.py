import random

import pytest

from nilpotent_as.base import get_field


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(scope="session")
def F5():
    return get_field(5)


@pytest.fixture(scope="session")
def F9():
    return get_field(3, 2)


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
