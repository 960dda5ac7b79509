import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo", deadline=None, derandomize=True, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


import time
from contextlib import contextmanager

import pytest

_CRITERIA: dict[int, tuple[str, bool, float, str]] = {}


class _Record:
    detail = ""


@pytest.fixture
def criterion():
    """Time a block as acceptance criterion ``n``; a block over ``limit`` seconds fails."""

    @contextmanager
    def block(n: int, title: str, limit: float | None = None):
        rec = _Record()
        t0 = time.perf_counter()
        try:
            yield rec
        except BaseException as exc:
            why = " ".join(f"{type(exc).__name__}: {exc}".split())[:300]
            _CRITERIA[n] = (title, False, time.perf_counter() - t0, f"{rec.detail} | {why}" if rec.detail else why)
            raise
        dt = time.perf_counter() - t0
        if limit is not None and dt > limit:
            _CRITERIA[n] = (title, False, dt, f"took {dt:.1f}s, limit {limit:.0f}s")
            raise AssertionError(f"criterion {n} exceeded its time limit: {dt:.1f}s > {limit}s")
        _CRITERIA[n] = (title, True, dt, rec.detail)

    return block


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok, dt, detail = _CRITERIA[n]
        tr.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}  {title}  ({dt:.1f}s)  {detail}")
