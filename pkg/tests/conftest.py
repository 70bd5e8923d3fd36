import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

# criterion number -> (passed, summary line); filled by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        passed, line = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if passed else 'FAIL'}  {line}")


@pytest.fixture(autouse=True, scope="module")
def _release_caches():
    # the rewriting caches grow large over a full run
    yield
    from cp2q import actions, algebra
    algebra.clear_caches()
    actions.clear_caches()
