import random
import re

import pytest

_ACCEPTANCE = {}


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    key = int(m.group(1))
    entry = _ACCEPTANCE.setdefault(key, {"outcome": "passed", "duration": 0.0})
    if report.when == "call" or report.failed:
        entry["duration"] += report.duration
        if report.failed:
            entry["outcome"] = "failed"
        elif report.skipped:
            entry["outcome"] = "skipped"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        entry = _ACCEPTANCE[key]
        verdict = {"passed": "PASS", "failed": "FAIL"}.get(entry["outcome"], "SKIP")
        terminalreporter.write_line(
            f"criterion {key}: {verdict} ({entry['duration']:.2f}s)")
