import random

import pytest

_ACCEPTANCE: list[str] = []


@pytest.fixture
def rng():
    return random.Random(20240613)


@pytest.fixture
def acceptance_lines():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
