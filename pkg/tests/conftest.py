import pytest

# filled by tests/test_acceptance.py, one (label, passed, detail) per criterion
ACCEPTANCE_LINES: list[tuple[str, bool, str]] = []


@pytest.fixture
def acceptance_report():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in sorted(ACCEPTANCE_LINES, key=lambda r: int(r[0][1:].split()[0])):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")
