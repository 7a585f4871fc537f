import functools

import numpy as np
import pytest

from artifact.cases import build_manifest
from artifact.parabolic import build_parabolic
from artifact.report import run_classification
from artifact.spaces import build_space

SPACES = ("sl3h", "so5c", "su:n=1", "su:n=2")


@functools.lru_cache(maxsize=None)
def manifest(spec: str):
    return build_manifest(spec)


@functools.lru_cache(maxsize=None)
def report(spec: str):
    return run_classification(spec, seed=0)


@functools.lru_cache(maxsize=None)
def parabolic(spec: str, j: int):
    return build_parabolic(build_space(spec).datum, j)


@pytest.fixture(params=SPACES)
def space_id(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# acceptance lines, printed at the end of the session whatever the capture mode
ACCEPTANCE_LINES = {}
SESSION = {}


def pytest_sessionstart(session):
    import time
    SESSION["start"] = time.perf_counter()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    import time
    if not ACCEPTANCE_LINES:
        return
    elapsed = time.perf_counter() - SESSION.get("start", time.perf_counter())
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        ok, detail = ACCEPTANCE_LINES[n]
        if n == 9:
            ok = ok and elapsed < 60.0
            detail = f"{detail}; session {elapsed:.1f} s (< 60 s required)"
        tr.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
