import contextlib

import pytest

_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Record one acceptance line; the line reads FAIL if the block raises."""

    @contextlib.contextmanager
    def _run(label):
        try:
            yield
        except BaseException as exc:
            _ACCEPTANCE.append((label, False, str(exc).splitlines()[0] if str(exc) else type(exc).__name__))
            raise
        _ACCEPTANCE.append((label, True, ""))

    return _run


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _ACCEPTANCE:
        line = f"{'PASS' if ok else 'FAIL'}  {label}"
        if detail:
            line += f"  -- {detail[:160]}"
        terminalreporter.write_line(line)
