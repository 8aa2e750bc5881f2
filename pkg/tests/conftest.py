"""Per-criterion PASS/FAIL summary for the acceptance suite."""

import pytest

CRITERIA = {
    1: "z^p+w^q family: genus, n_mu, pole orders",
    2: "z^2+P_n(w) family: genus, n_mu, pole orders",
    3: "z^3+w^3 at xi=1",
    4: "classical table: non-degeneracy and singular zero fibre",
    5: "z^n-1: dimension 1 and arithmetic genus n",
    6: "Pick identity on corpus and random polygons",
    7: "chart residuals on the 10x10 grid",
    8: "pullback exponent slope and R^2",
    9: "flow escape-time dichotomy and conservation",
    10: "brute-force oracles for B+ and square-freeness",
    11: "index-sum identity",
}

_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n = marker.args[0]
    if rep.when == "call" or rep.failed:
        ok = _outcomes.get(n, True) and rep.passed
        _outcomes[n] = ok


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        if n in _outcomes:
            status = "PASS" if _outcomes[n] else "FAIL"
            terminalreporter.write_line(f"criterion {n:2d}: {status}  {CRITERIA[n]}")
