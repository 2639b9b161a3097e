import time
import warnings

import pytest

from stabmod import catalog
from stabmod.cohomology import cohomology

warnings.simplefilter("ignore", UserWarning)

P = 7

# collected "criterion N: PASS/FAIL" lines, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance():
    def record(criterion: str, ok: bool, detail: str) -> bool:
        ACCEPTANCE_LINES.append(
            f"criterion {criterion}: {'PASS' if ok else 'FAIL'} — {detail}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


def _timed(pres, jobs=1):
    t0 = time.monotonic()
    r = cohomology(pres, jobs=jobs)
    return r, time.monotonic() - t0


@pytest.fixture(scope="session")
def coh_k22():
    return _timed(catalog.build_K(2, 2, P))


@pytest.fixture(scope="session")
def coh_k33():
    return _timed(catalog.build_K(3, 3, P))


@pytest.fixture(scope="session")
def coh_k44():
    return _timed(catalog.build_K(4, 4, P), jobs=4)


@pytest.fixture(scope="session")
def coh_e430():
    return _timed(catalog.build_E(4, 3, 0, P, ravenel_scheme="d_n"))


@pytest.fixture(scope="session")
def coh_e440():
    return _timed(catalog.build_E(4, 4, 0, P, ravenel_scheme="d_n"))


@pytest.fixture(scope="session")
def coh_e441():
    return _timed(catalog.build_E(4, 4, 1, P))


@pytest.fixture(scope="session")
def coh_e442():
    return _timed(catalog.build_E(4, 4, 2, P))
