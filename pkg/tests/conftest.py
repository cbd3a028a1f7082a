import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=int(os.environ.get("TROPSYM_EXAMPLES", "40")),
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


_CRITERIA: dict[int, tuple[str, str, float]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = report.keywords.get("criterion") if hasattr(report, "keywords") else None
    if marker is None:
        return
    n, title = _CRITERION_INFO.get(report.nodeid, (None, None))
    if n is not None:
        _CRITERIA[n] = (title, "PASS" if report.passed else "FAIL", report.duration)


_CRITERION_INFO: dict[str, tuple[int, str]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _CRITERION_INFO[item.nodeid] = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, verdict, secs = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}  ({secs:.2f}s)  {title}")
