import os

import pytest

DATA = os.path.join(os.path.dirname(__file__), "data")

# filled by test_acceptance.py, echoed after the run
ACCEPTANCE_LINES = {}


def record_acceptance(number, ok, detail):
    line = f"ACCEPTANCE {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])


def load_reference():
    rows = []
    with open(os.path.join(DATA, "bessel_reference.txt")) as fh:
        for line in fh:
            if line.startswith("#") or not line.strip():
                continue
            kind, nu, x, lv = line.split()
            rows.append((kind, float(nu), float(x), float(lv)))
    return rows


@pytest.fixture(scope="session")
def bessel_reference():
    return load_reference()
