import contextlib
import json
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

_CRITERIA: dict[int, tuple[bool, str, str]] = {}


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def m11_fixture() -> dict:
    return json.loads((DATA / "m11.json").read_text())


@pytest.fixture
def criterion():
    """Context manager recording the outcome of an acceptance criterion."""

    @contextlib.contextmanager
    def run(number: int, title: str):
        notes: list[str] = []
        try:
            yield notes
        except BaseException as exc:
            _CRITERIA[number] = (False, title, f"{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}")
            raise
        _CRITERIA[number] = (True, title, "; ".join(notes))

    return run


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, title, detail = _CRITERIA[n]
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
