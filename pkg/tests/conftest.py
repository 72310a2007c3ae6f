import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from wakatilt import fixtures  # noqa: E402
from wakatilt.indec import enumerate_indecomposables  # noqa: E402

ACCEPTANCE: dict[int, tuple[bool, str]] = {}

_REGISTRIES = {}


def registry(name):
    if name not in _REGISTRIES:
        _REGISTRIES[name] = enumerate_indecomposables(fixtures.load(name))
    return _REGISTRIES[name]


@pytest.fixture(scope="session")
def reg():
    return registry


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
