import numpy as np
import pytest

from hochlift.corpus import corpus_path


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture
def corpus():
    return lambda name: str(corpus_path(name))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)
