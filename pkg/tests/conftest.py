from pathlib import Path

import pytest

from regbounds.io import parse_input
from regbounds.suite import bundled_corpus

CORPUS = bundled_corpus()


@pytest.fixture(scope="session")
def corpus() -> Path:
    return CORPUS


@pytest.fixture(scope="session")
def load():
    def _load(name, kind=None):
        return parse_input(CORPUS / name, kind)
    return _load


_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance_log(request):
    """Append one ``ACCEPTANCE`` line per criterion; printed in the terminal summary."""
    lines = request.config.stash[_ACCEPTANCE_KEY]

    def record(line: str):
        print(line)
        lines.append(line)
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split()[1])):
            terminalreporter.write_line(line)
