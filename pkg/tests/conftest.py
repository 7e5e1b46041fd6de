import pytest

ACCEPTANCE_LINES: dict[int, str] = {}


class _Recorder:
    def record(self, n: int, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {detail}"
        ACCEPTANCE_LINES[n] = line
        print(line)


@pytest.fixture
def acceptance():
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
