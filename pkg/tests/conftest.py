"""Shared pytest plumbing.

The acceptance tests register one line per criterion through
``record_acceptance``; the terminal-summary hook prints the collected
lines after the run so every criterion's verdict is visible in one
block regardless of -v or capture settings.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: list[tuple[int, str, str]] = []


def record_acceptance(number: int, ok: bool, detail: str, skipped: bool = False) -> bool:
    status = "SKIP" if skipped else ("PASS" if ok else "FAIL")
    _ACCEPTANCE.append((number, status, detail))
    return ok


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, detail in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"ACCEPTANCE {number:2d}: {status}  {detail}")
