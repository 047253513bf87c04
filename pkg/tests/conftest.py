import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS: list[tuple[int, bool, str]] = []


@pytest.fixture
def criterion():
    """record(n, ok, detail): log one acceptance line, then assert it."""
    def record(n: int, ok: bool, detail: str):
        _RESULTS.append((n, ok, detail))
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail
    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, ok, detail in sorted(_RESULTS, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
    terminalreporter.write_line("criterion 10: NOTE - scope statement only; the all-genus theorems are not "
                                "checked, their finite ingredients are criteria 1-9")
