import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def record_criterion(request):
    """Record one acceptance line; printed in the terminal summary."""
    lines = request.config.stash[_LINES]

    def record(number, title, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        lines.append(f"[{status}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash[_LINES]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
