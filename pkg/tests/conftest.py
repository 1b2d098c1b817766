import contextlib
import os
import time

import pytest

_RESULTS = {}


@contextlib.contextmanager
def criterion(number, title):
    """Record the outcome of an acceptance criterion for the terminal summary."""
    start = time.perf_counter()
    try:
        yield
    except BaseException as e:
        _RESULTS[number] = (title, False, time.perf_counter() - start, f"{type(e).__name__}: {e}"[:160])
        raise
    _RESULTS[number] = (title, True, time.perf_counter() - start, "")


@pytest.fixture
def record():
    return criterion


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, ok, secs, note = _RESULTS[number]
        line = f"AC{number:<2} {'PASS' if ok else 'FAIL'}  {title}  ({secs:.1f}s)"
        if note:
            line += f"  {note}"
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def corpus_path():
    from rankforge.cli import corpus_dir
    return corpus_dir(os.environ.get("RANKFORGE_CORPUS"))
