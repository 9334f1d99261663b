import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_CRITERIA: list[tuple[int, str, str, float]] = []


@pytest.fixture(scope="session")
def cache_dir(request):
    """Graph6 cache for enumerations, kept between runs by pytest's cache."""
    return str(request.config.cache.mkdir("cyclestab-enumeration"))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    start = time.perf_counter()
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        number, title = marker.args
        status = "FAIL" if outcome.excinfo is not None else "PASS"
        _CRITERIA.append((number, title, status, time.perf_counter() - start))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, status, secs in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {number:>2} {status}  {title}  ({secs:.1f}s)")
