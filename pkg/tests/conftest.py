"""Shared pytest plumbing: the acceptance-criteria result board.

Acceptance tests record one line per criterion; the lines are replayed in a
dedicated terminal section after the run so they stay visible even though
pytest captures test stdout.
"""

from __future__ import annotations

_CRITERION_LINES: dict[int, str] = {}


def record_criterion(number: int, label: str, ok: bool, elapsed: float, note: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    detail = f"{elapsed:.1f}s" + (f", {note}" if note else "")
    line = f"[criterion {number}] {label}: {status} ({detail})"
    _CRITERION_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if not _CRITERION_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERION_LINES):
        terminalreporter.write_line(_CRITERION_LINES[number])
