import pytest

from semiring_lab.corpus import built_in_corpus

from acceptance_log import LINES as ACCEPTANCE_LINES


@pytest.fixture(scope="session")
def corpus():
    return built_in_corpus()


@pytest.fixture(scope="session")
def get(corpus):
    return corpus.get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
