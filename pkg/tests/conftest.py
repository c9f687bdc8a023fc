import pytest

from ivwsn.config import Config

_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def cfg():
    return Config()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def verdict(request):
    """Record and print one PASS/FAIL line, then assert on it."""
    lines = request.config.stash[_ACCEPTANCE]

    def check(name, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
        lines.append(line)
        print(line)
        assert ok, line
    return check


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
