import sys
import time
from pathlib import Path

import pytest

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

GOLDEN = HERE / "golden"


@pytest.fixture(scope="session")
def golden():
    return GOLDEN


@pytest.fixture(scope="session")
def theorem_build():
    """The level-1 presentation and the seconds spent building and checking it."""
    from smallcanc import build_group_for_theorem

    start = time.perf_counter()
    P = build_group_for_theorem(1, 6)
    return P, time.perf_counter() - start


@pytest.fixture(scope="session")
def theorem_group_n1(theorem_build):
    return theorem_build[0]


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, detail = results[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
