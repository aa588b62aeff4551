"""Shared test plumbing.

The acceptance tests record one verdict per criterion; a terminal-summary
hook prints them as a compact pass/fail table after the run so the outcome
is visible even when every test passes.
"""

from __future__ import annotations

import pytest

_CRITERIA = {
    1: "constitutive identity suite",
    2: "incompressible reduction: traceless evolution",
    3: "free swell converges to the steady-state oracle",
    4: "free swell qualitative properties",
    5: "compress/unload cycle",
    6: "grid refinement study",
    7: "elastic limit keeps g frozen",
    8: "bit-identical CSVs across reruns",
}

_verdicts: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def acceptance_log():
    def record(criterion: int, passed: bool, detail: str = "") -> None:
        _verdicts[criterion] = (bool(passed), detail)
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        if k not in _verdicts:
            terminalreporter.write_line(f"criterion {k}: NO VERDICT ({_CRITERIA[k]})")
            continue
        passed, detail = _verdicts[k]
        word = "PASS" if passed else "FAIL"
        line = f"criterion {k}: {word} ({_CRITERIA[k]})"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
