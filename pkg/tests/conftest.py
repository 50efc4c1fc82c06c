"""Shared fixtures: the stock link instance exercised throughout the suite."""

import pytest

from asktag import DesignConstraints, LinkConfig

#: Verdict lines collected by the acceptance tests, echoed after the run.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.line(line)


@pytest.fixture()
def verdict():
    """Record one PASS/FAIL line for an acceptance criterion, then assert it.

    The line is printed immediately (visible under ``-s``) and replayed in
    the terminal summary, so a plain ``pytest`` run still shows the report.
    """

    def _verdict(number, ok, detail):
        line = f"[criterion {number:02d}] {'PASS' if ok else 'FAIL'} - {detail}"
        print(line, flush=True)
        ACCEPTANCE_LINES.append(line)
        assert ok, line

    return _verdict


@pytest.fixture()
def cfg():
    """Default link: 1 W carrier at 915 MHz, 7 m range, exponent-3 path."""
    return LinkConfig()


@pytest.fixture()
def worked_constraints():
    """Constraint set used by most worked instances: m_th 0.15, 5/3 uW floors."""
    return DesignConstraints(m_th=0.15, p_l_min=5e-6, p_b_min=3e-6)


@pytest.fixture()
def relaxed_constraints():
    """Binary-modulation constraints with the reader floor dropped."""
    return DesignConstraints(m_th=0.2, p_l_min=5e-6, p_b_min=None)
