import pytest

_RESULTS = {}


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(number, title, checks):
        failed = [name for name, ok in checks if not ok]
        status = "PASS" if not failed else "FAIL"
        detail = f"{len(checks) - len(failed)}/{len(checks)} checks"
        if failed:
            detail += "; failing: " + ", ".join(failed)
        line = f"acceptance {number:>2} {status}  {title} ({detail})"
        _RESULTS[number] = line
        print(line)
        return not failed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        terminalreporter.write_line(_RESULTS[number])
