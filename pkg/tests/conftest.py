"""Shared pytest plumbing for the suite.

The acceptance tests each record one human-readable verdict line.  The
terminal-summary hook reprints the collected lines together at the end of
the run, so the criterion-level results stay visible even though pytest
captures per-test stdout.
"""

_ACCEPTANCE_LINES = []


def record_acceptance(line: str) -> None:
    """Store a verdict line and echo it immediately (visible under -s)."""
    _ACCEPTANCE_LINES.append(line)
    print(line)


def check_criterion(label: str, ok: bool, detail: str) -> None:
    """Record a PASS/FAIL line for an acceptance criterion, then assert it."""
    status = "PASS" if ok else "FAIL"
    record_acceptance(f"ACCEPTANCE {label}: {status} - {detail}")
    assert ok, f"criterion {label}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
