import pytest

from bialgebra_realization.instances import fix_m2, fix_p2g1


@pytest.fixture
def p2g1():
    return fix_p2g1()


@pytest.fixture
def m2():
    return fix_m2()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
