import pytest

from linkcert.augment import augment
from linkcert.generate import figure_one, pretzel, two_bridge
from linkcert.polyhedra import decompose

ACCEPTANCE = {}


def record(number: int, title: str, passed: bool, detail: str = "") -> bool:
    ACCEPTANCE[number] = (title, passed, detail)
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[n]
        line = f"criterion {n}: {'PASS' if passed else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def c66():
    return decompose(augment(two_bridge(6, 6)))


@pytest.fixture(scope="session")
def fig1():
    return decompose(augment(figure_one()))


@pytest.fixture(scope="session")
def p777():
    return decompose(augment(pretzel(7, 7, 7)))
