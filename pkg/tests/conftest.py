import pytest

from revalu.gates import cx, x
from revalu.netlist import Circuit, Register

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and rep.when == "call":
        _criteria.append((marker.args, item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), name, outcome in sorted(_criteria):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {num}. {title} ({name})")


@pytest.fixture
def reordered_adder2():
    """adder(2) with the two Toffolis of bit 1 swapped; functionally wrong."""
    from revalu.arith import build_adder
    c = build_adder(2)
    g = list(c.gates)
    g[0], g[2] = g[2], g[0]
    return c.with_gates(g)


@pytest.fixture
def dirty_ancilla():
    """Flips its ANC0 line unconditionally."""
    return Circuit(2, (cx(0, 1), x(1)), (Register("A", 0, 0), Register("ANC0", 1, 1)))
