import pytest

from known import load_adf, load_grappa


@pytest.fixture
def abc():
    return load_adf()


@pytest.fixture
def abc_grappa():
    return load_grappa()


@pytest.fixture
def abcd_grappa():
    return load_grappa("abcd.grappa")


# -- acceptance reporting ------------------------------------------------------
#
# Tests marked ``@pytest.mark.criterion(n, "title")`` are grouped per n; the
# terminal summary prints one PASS/FAIL line per criterion.  The whole run
# must also finish within SUITE_BUDGET seconds.

SUITE_BUDGET = 600.0
_criteria: dict[int, dict] = {}
_started = [0.0]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion the test belongs to")


def pytest_sessionstart(session):
    import time

    _started[0] = time.monotonic()


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    report = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None and (report.when == "call" or report.outcome != "passed"):
        n, title = mark.args
        entry = _criteria.setdefault(n, {"title": title, "failed": [], "ran": 0})
        if report.when == "call":
            entry["ran"] += 1
        if report.outcome != "passed":
            entry["failed"].append(item.name)
    return report


def _elapsed():
    import time

    return time.monotonic() - _started[0]


def pytest_sessionfinish(session, exitstatus):
    if _criteria and _elapsed() > SUITE_BUDGET and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_criteria):
        entry = _criteria[n]
        ok = not entry["failed"] and entry["ran"] > 0
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {entry['title']}"
        if entry["failed"]:
            line += f"  (failed: {', '.join(entry['failed'])})"
        tr.write_line(line)
    elapsed = _elapsed()
    verdict = "PASS" if elapsed <= SUITE_BUDGET else "FAIL"
    tr.write_line(f"suite time: {verdict}  {elapsed:.0f} s (budget {SUITE_BUDGET:.0f} s)")
