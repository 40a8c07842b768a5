import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# one summary line per acceptance criterion; parametrized cases are folded together
_CRITERIA = {}
_TITLES = {}


def _criterion(nodeid):
    name = nodeid.split("::")[-1]
    if "test_acceptance.py" not in nodeid or not name.startswith("test_criterion_"):
        return None
    return int(name[len("test_criterion_"):].split("[")[0])


def pytest_itemcollected(item):
    n = _criterion(item.nodeid)
    if n is not None and item.function.__doc__:
        _TITLES[n] = item.function.__doc__.strip().splitlines()[0]


def pytest_runtest_logreport(report):
    n = _criterion(report.nodeid)
    if n is None:
        return
    if report.when == "call" or report.outcome == "failed":
        _CRITERIA[n] = _CRITERIA.get(n, True) and report.outcome == "passed"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"{'PASS' if _CRITERIA[n] else 'FAIL'} criterion {n}: {_TITLES.get(n, '')}")
