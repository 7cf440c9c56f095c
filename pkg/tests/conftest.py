from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

SLOW = os.environ.get("PRS_SLOW", "") not in ("", "0")


def pytest_collection_modifyitems(config, items):
    if SLOW:
        return
    skip = pytest.mark.skip(reason="long exhaustive computation; set PRS_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


# -- acceptance criteria summary ---------------------------------------------------------
_CRITERIA: dict[int, list[tuple[str, str, float]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _CRITERIA.setdefault(mark.args[0], []).append((item.name, rep.outcome, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        parts = _CRITERIA[n]
        failed = [name for name, out, _ in parts if out == "failed"]
        skipped = [name for name, out, _ in parts if out == "skipped"]
        ran = len(parts) - len(skipped)
        secs = sum(d for _, _, d in parts)
        status = "FAIL" if failed or not ran else "PASS"
        line = f"criterion {n:2d}: {status}  ({ran - len(failed)}/{ran} parts, {secs:.1f} s"
        if skipped:
            line += f", {len(skipped)} slow part(s) skipped"
        line += ")"
        if failed:
            line += "  failed: " + ", ".join(failed)
        tr.write_line(line)
