from __future__ import annotations

import pytest

from quons.mtc import builtin
from quons.recoupling import build_recoupling

_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def record():
    """Store one pass/fail line per acceptance criterion; later calls for the
    same criterion can only downgrade it."""
    def _record(cid: str, passed: bool, detail: str = "") -> bool:
        old = _ACCEPTANCE.get(cid)
        if old is not None:
            passed = passed and old[0]
            detail = "; ".join(x for x in (old[1], detail) if x)
        _ACCEPTANCE[cid] = (bool(passed), detail)
        return bool(passed)
    return _record


@pytest.fixture(scope="session")
def recoupling_cache():
    cache = {}

    def get(name: str):
        if name not in cache:
            m = builtin(name)
            cache[name] = (m, build_recoupling(m))
        return cache[name]
    return get


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_ACCEPTANCE, key=lambda c: (int(c[1:].split(".")[0]), c)):
        ok, detail = _ACCEPTANCE[cid]
        terminalreporter.write_line(f"ACCEPTANCE {cid} {'PASS' if ok else 'FAIL'}  {detail}")
