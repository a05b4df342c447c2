import pytest

from shared_models import ACCEPTANCE_LINES, general_genus6, plane_case


@pytest.fixture(scope="session")
def sextic():
    """3-nodal sextic over F_10007 with its canonical model and linear strand."""
    return plane_case("sextic")


@pytest.fixture(scope="session")
def genus10():
    return plane_case("genus10")


@pytest.fixture(scope="session")
def octic():
    return plane_case("octic")


@pytest.fixture(scope="session")
def genus9():
    return plane_case("genus9")


@pytest.fixture(scope="session")
def genus6():
    return general_genus6(0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
