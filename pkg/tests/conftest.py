import datetime
import re

import pytest

from pqhybrid.harness import issue_scheme, materials_from_seed

CLOCK = datetime.datetime(2025, 1, 1, tzinfo=datetime.timezone.utc)
ZERO_SEED = bytes(32)

ACCEPTANCE_TITLES = {
    1: "size ordering composite < catalyst < chameleon",
    2: "timing structure under injected latency",
    3: "migration compatibility matrix",
    4: "composite AND semantics",
    5: "catalyst pre-TBS exactness",
    6: "chameleon reconstruction",
    7: "DER canonical round-trip",
    8: "dual-security implication",
    9: "determinism of bench size and issue",
}

_acceptance: dict = {}
_AC_RE = re.compile(r"test_acceptance\.py::test_ac(\d+)_")


@pytest.fixture(scope="session")
def clock():
    return CLOCK


@pytest.fixture(scope="session")
def materials():
    return materials_from_seed(ZERO_SEED, CLOCK)


@pytest.fixture(scope="session")
def issued(materials):
    """One certificate per scheme, plus the chameleon inner certificate."""
    out = {s: issue_scheme(s, materials)[0] for s in ("pure", "composite", "catalyst")}
    out["chameleon"], out["inner"] = issue_scheme("chameleon", materials)
    return out


def pytest_runtest_logreport(report):
    m = _AC_RE.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    failed = report.failed or (report.when == "call" and report.outcome != "passed")
    _acceptance[n] = _acceptance.get(n, True) and not failed


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_TITLES):
        if n in _acceptance:
            status = "PASS" if _acceptance[n] else "FAIL"
        else:
            status = "NOT RUN"
        terminalreporter.write_line(f"AC{n} {ACCEPTANCE_TITLES[n]}: {status}")
