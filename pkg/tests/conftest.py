from collections import OrderedDict

import pytest

_RESULTS: "OrderedDict[int, list]" = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        n, title = mark.args
        entry = _RESULTS.setdefault(n, [title, [], []])
        status = "xfail" if hasattr(rep, "wasxfail") else rep.outcome
        entry[1].append((item.name, status, str(getattr(rep, "wasxfail", "") or "")))
        entry[2].extend(v for k, v in item.user_properties if k == "note")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_RESULTS):
        title, parts, extra = _RESULTS[n]
        ok = all(status == "passed" for _, status, _ in parts)
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}"
        notes = [f"{name}: {status}" + (f" ({why})" if why else "") for name, status, why in parts
                 if status != "passed"]
        if notes or extra:
            line += "  [" + "; ".join(notes + extra) + "]"
        tr.write_line(line)
