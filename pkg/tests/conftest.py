import pytest

_LOG_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LOG_KEY] = []


@pytest.fixture(scope="session")
def acceptance_log(request):
    return request.config.stash[_LOG_KEY]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_LOG_KEY, [])
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(log):
        terminalreporter.write_line(line[1])
