import pytest

_LINES = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for the acceptance summary."""

    def record(name: str, ok: bool | None, detail: str):
        status = "SKIP" if ok is None else "PASS" if ok else "FAIL"
        line = f"{name} {status}: {detail}"
        _LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
