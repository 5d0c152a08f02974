import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


# acceptance summary: one line per criterion, printed after the run

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("acceptance")
    if m is not None and rep.when == "call":
        num, title = m.args
        _ACCEPTANCE[num] = (title, rep.outcome)
    elif m is not None and rep.when == "setup" and rep.outcome != "passed":
        num, title = m.args
        _ACCEPTANCE[num] = (title, rep.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        title, outcome = _ACCEPTANCE[num]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:>2}: {status}  {title}")
