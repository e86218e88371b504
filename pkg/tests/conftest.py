import os

import pytest

# deterministic hypothesis runs; exact arithmetic makes each example slow-ish
from hypothesis import settings

settings.register_profile("repo", max_examples=25, deadline=None, derandomize=True)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))

_LINES: list[str] = []


@pytest.fixture
def verdict():
    """Record one pass/fail line; lines are echoed in the terminal summary."""

    def record(name: str, ok: bool, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else "")
        print(line)
        _LINES.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
