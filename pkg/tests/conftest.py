import pytest

_criterion_results: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(n): acceptance criterion number covered by the test"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        marker = item.get_closest_marker("criterion")
        if marker:
            _criterion_results.setdefault(marker.args[0], []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criterion_results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(_criterion_results):
        results = _criterion_results[num]
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(
            f"criterion {num:2d}: {status} ({sum(results)}/{len(results)} checks)"
        )
