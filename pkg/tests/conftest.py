import sys

import pytest

import _systems


@pytest.fixture(scope="session")
def rs3():
    return _systems.rs3()


@pytest.fixture(scope="session")
def rs4():
    return _systems.rs4()


@pytest.fixture(scope="session")
def rs5():
    return _systems.rs5()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    RESULTS = mod.RESULTS
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        ok, detail = RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
