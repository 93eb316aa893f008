import sys
import random

import pytest

from rbsys import generators


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture(scope="session")
def cat():
    return generators.catalog()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
