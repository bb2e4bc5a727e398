import pytest

from tilting_atlas import category, covering_poset, parse_quiver


@pytest.fixture(scope="session")
def a2():
    return category(parse_quiver("A2"))


@pytest.fixture(scope="session")
def p_a2():
    return covering_poset("A2", 3)


@pytest.fixture(scope="session")
def p_a3():
    return covering_poset("A3", 3)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
