import pytest

from tripoint.fixtures import four_point_discrete, four_point_example, three_point_multi


@pytest.fixture
def four_point():
    return four_point_example()


@pytest.fixture
def four_point_delta():
    return four_point_discrete()


@pytest.fixture
def multi35():
    return three_point_multi()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
