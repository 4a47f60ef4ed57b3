import re

import pytest

from asdforge.newform import delta_oracle, delta_prime_coeffs, delta_spec, extend_coefficients


@pytest.fixture(scope="session")
def delta():
    return delta_oracle(2187)


@pytest.fixture(scope="session")
def delta100(delta):
    return delta.truncate(100)


@pytest.fixture(scope="session")
def delta_nf(delta):
    return delta_spec(delta_prime_coeffs(delta))


@pytest.fixture(scope="session")
def delta_b(delta_nf):
    return extend_coefficients(delta_nf, 2187)


def pytest_terminal_summary(terminalreporter):
    status = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", rep.nodeid)
            if m and (rep.when == "call" or outcome != "passed"):
                key = (int(m.group(1)), m.group(2))
                status[key] = status.get(key, True) and outcome == "passed"
    if status:
        terminalreporter.section("acceptance criteria")
        for (num, name), ok in sorted(status.items()):
            terminalreporter.write_line(f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {name}")
