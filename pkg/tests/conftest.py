from __future__ import annotations

import pytest

# criterion number -> list of (passed, seconds, test name)
_CRITERIA: dict[int, list[tuple[bool, float, str]]] = {}
_TITLES: dict[int, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    num = marker.args[0]
    _TITLES[num] = marker.args[1]
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _CRITERIA.setdefault(num, []).append((rep.passed, rep.duration, item.name))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        runs = _CRITERIA[num]
        ok = all(p for p, _, _ in runs)
        secs = sum(d for _, d, _ in runs)
        line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {_TITLES[num]}  ({secs:.1f}s)"
        failed = [name for p, _, name in runs if not p]
        if failed:
            line += "  failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
