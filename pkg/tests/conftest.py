import pytest

_acceptance = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    key = marker.args[0]
    if report.when == "call" or (report.when == "setup" and report.failed):
        _acceptance[key] = (marker.kwargs.get("title", item.name), report.passed, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_acceptance):
        title, passed, duration = _acceptance[key]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {key:>2}: {title} ({duration:.3f}s)")
