import pytest

from srdops.corpus import corpus, named


@pytest.fixture(scope="session")
def K_A():
    return named()["K_A"]


@pytest.fixture(scope="session")
def K_B():
    return named()["K_B"]


@pytest.fixture(scope="session")
def K_C():
    return named()["K_C"]


@pytest.fixture(scope="session")
def all_complexes():
    return [K for _, K in corpus()]


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance as acc
    except ImportError:
        return
    if not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(acc.RESULTS):
        terminalreporter.write_line(acc.report_line(k))
