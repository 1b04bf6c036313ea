import random

import pytest
from hypothesis import HealthCheck, settings

from bitcong.fields import field_make

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def gf4():
    return field_make(2, 2)


@pytest.fixture(scope="session")
def gf32():
    return field_make(2, 5)


# -- acceptance summary --------------------------------------------------------------

_ACCEPTANCE: dict = {}


class _Criterion:
    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.notes: list = []

    def note(self, text: str):
        self.notes.append(text)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        entry = _ACCEPTANCE.setdefault(self.number, {"title": self.title, "status": "PASS", "notes": []})
        if exc_type is not None:
            entry["status"] = "FAIL"
            self.notes.append(f"{exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''}".rstrip(": "))
        entry["notes"] += self.notes
        line = _format(self.number, entry)
        print(line)
        return False


def _format(n: int, entry: dict) -> str:
    notes = "; ".join(entry["notes"])
    return f"criterion {n:2d} {entry['status']}: {entry['title']}" + (f" ({notes})" if notes else "")


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_format(n, _ACCEPTANCE[n]))
