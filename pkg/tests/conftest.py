import random

import pytest

from thompsonfrac import fixtures

# criterion number -> (passed, detail); filled by test_acceptance
CRITERIA: dict = {}


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture(params=["z2", "z3inv", "z4inv", "s3"])
def small_triple(request):
    return fixtures.get(request.param)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
