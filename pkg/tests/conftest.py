"""Shared pytest wiring.

Acceptance tests record one human-readable verdict line apiece via the
``acceptance_log`` fixture; the hook below replays them in the terminal
summary so a plain ``pytest -v`` run shows the per-criterion outcomes
even though stdout is captured.
"""

import pytest


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def acceptance_log(request):
    lines = request.config._acceptance_lines

    def record(criterion: str, passed: bool, detail: str = "") -> None:
        verdict = "PASS" if passed else "FAIL"
        line = f"[{verdict}] {criterion}"
        if detail:
            line += f" ({detail})"
        lines.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
