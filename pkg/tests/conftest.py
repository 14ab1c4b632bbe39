import pytest

_acceptance: list[tuple[str, str, str]] = []


@pytest.fixture
def criterion(request):
    """Attach a one-line description to an acceptance test for the summary."""
    def record(text):
        request.node.user_properties.append(("criterion", text))
    return record


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            _acceptance.append((report.outcome.upper(), report.nodeid.split("::")[-1], value))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for outcome, name, text in _acceptance:
        mark = "PASS" if outcome == "PASSED" else "FAIL"
        terminalreporter.write_line(f"[{mark}] {name}: {text}")
