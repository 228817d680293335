import pytest

from shintani_cm.io import field_from_dict
from shintani_cm.lfun import class_number_cm
from shintani_cm.selftest import load_data, load_example


@pytest.fixture(scope="session")
def ex1():
    return load_example(1)


@pytest.fixture(scope="session")
def ex2():
    return load_example(2)


@pytest.fixture(scope="session")
def rationals():
    return field_from_dict(load_data("rationals.json"))


@pytest.fixture(scope="session")
def ex1_report(ex1):
    spec, g = ex1
    return class_number_cm(spec, 3, 6, Q1=8, Q2=1)


@pytest.fixture(scope="session")
def ex2_report(ex2):
    spec, g = ex2
    return class_number_cm(spec, 3, 6, Q1=8, Q2=1)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
