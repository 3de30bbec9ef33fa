"""Collects acceptance outcomes and prints one line per criterion at the end of the run."""
import pytest

_results: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and rep.passed):
        return
    num, title = mark.args
    entry = _results.setdefault(num, {"title": title, "passed": 0, "failed": 0, "notes": []})
    if rep.passed:
        entry["passed"] += 1
    elif rep.failed:
        entry["failed"] += 1
    for name, value in getattr(item, "user_properties", []):
        if name == "note":
            entry["notes"].append(value)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_results):
        e = _results[num]
        state = "PASS" if e["failed"] == 0 and e["passed"] > 0 else "FAIL"
        notes = e["notes"][-1] if e["notes"] else ""
        tr.write_line(f"criterion {num:>2}: {state}  {e['title']}" + (f"  [{notes}]" if notes else ""))
