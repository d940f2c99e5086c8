import pytest

from affcell.cells import CellCertifier
from affcell.hecke import KLCache

# criterion -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def cache2():
    return KLCache(2, 14)


@pytest.fixture(scope="session")
def cache3():
    return KLCache(3, 10)


@pytest.fixture(scope="session")
def cert2(cache2):
    return CellCertifier(cache2, 12)


@pytest.fixture(scope="session")
def cert3(cache3):
    return CellCertifier(cache3, 10)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[1:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key} {'PASS' if ok else 'FAIL'}: {detail}")
