import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from fistab.exactlin import FieldSpec
from fistab.fixtures import named_fixtures

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.fixture(scope="session")
def F():
    return FieldSpec.prime()


@pytest.fixture(scope="session")
def fx(F):
    return named_fixtures(F, 10)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(k.split(".")[0]), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
