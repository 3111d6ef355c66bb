import pytest

from genus2covers import EllCurve, TwoTorsionIso, construct
from genus2covers.exactring import GF, QQ


@pytest.fixture(scope="session")
def q_pair():
    E = EllCurve.from_values(QQ, [0, 1, -1])
    Ep = EllCurve.from_values(QQ, [0, 1, 3])
    return construct(E, Ep, TwoTorsionIso.identity())


@pytest.fixture(scope="session")
def f5_pair():
    F = GF(5)
    E = EllCurve.from_values(F, [0, 1, 4])
    Ep = EllCurve.from_values(F, [0, 2, 3])
    return construct(E, Ep, TwoTorsionIso((2, 1, 3)))


# --- one summary line per acceptance criterion ----------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_runtest_makereport(item, call):
    m = item.get_closest_marker("criterion")
    if m is None or call.when == "teardown":
        return
    n, title = m.args
    ok = call.excinfo is None
    prev = _CRITERIA.get(n)
    # setup time counts too: some criteria do their heavy lifting in fixtures
    _CRITERIA[n] = (title, ok and (prev is None or prev[1]), (prev[2] if prev else 0.0) + call.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok, secs = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.1f} s)")
