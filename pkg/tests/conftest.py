import pytest

from biliaison.curves import make_curve
from biliaison.idealfile import bundled
from biliaison.polynomial import parse_polynomial

P = parse_polynomial


def curve_of(*gens, **kw):
    return make_curve([P(g) for g in gens], **kw)


@pytest.fixture(scope="session")
def skew():
    return make_curve(bundled("skew_lines").generators, name="skew_lines")


@pytest.fixture(scope="session")
def ci22():
    return make_curve(bundled("ci22").generators, name="ci22")


@pytest.fixture(scope="session")
def raised():
    return make_curve(bundled("raised").generators, name="raised")


@pytest.fixture(scope="session")
def cubic():
    return make_curve(bundled("twisted_cubic").generators, name="twisted_cubic")


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
