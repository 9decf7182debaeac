import pytest

_results = []


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    _results.append((marker.args[0], call.excinfo is None))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for text, ok in _results:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {text}")


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(12345)
