import time
from contextlib import contextmanager

import pytest

ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """Time a criterion body, fail it past its budget, and record a summary line."""

    @contextmanager
    def run(number: int, title: str, budget: float):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            within = elapsed < budget
            ACCEPTANCE[number] = (ok and within, title, elapsed, budget)
            print(f"criterion {number:2d} {'PASS' if ok and within else 'FAIL'} {title}"
                  f" ({elapsed:.1f}s of {budget:g}s)")
        assert within, f"criterion {number} took {elapsed:.1f}s, budget {budget:g}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, title, elapsed, budget = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}"
                                    f"  ({elapsed:.1f}s, budget {budget:g}s)")
