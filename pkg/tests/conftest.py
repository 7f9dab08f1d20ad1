import pytest

from worlds import MATRIX, levi, world

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(params=MATRIX, ids=lambda fq: f"{fq[0]}-q{fq[1]}")
def any_world(request):
    return world(*request.param)


@pytest.fixture(params=MATRIX, ids=lambda fq: f"{fq[0]}-q{fq[1]}")
def any_levi(request):
    return levi(*request.param)


@pytest.fixture
def a2q2():
    return world("A2", 2)


@pytest.fixture
def levi_a2q2():
    return levi("A2", 2)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
