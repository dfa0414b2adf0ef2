import sys

import pytest

from strongirr.builders import corpus


@pytest.fixture(scope="session")
def lattices():
    return corpus()


def pytest_generate_tests(metafunc):
    if "corpus_spec" in metafunc.fixturenames:
        metafunc.parametrize("corpus_spec", list(corpus()))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[i])
