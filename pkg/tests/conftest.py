import random

import pytest
from hypothesis import settings

from dfmat import lie

settings.register_profile("dfmat", max_examples=60, deadline=None)
settings.load_profile("dfmat")


@pytest.fixture(autouse=True)
def _cross_check_killing(monkeypatch):
    monkeypatch.setattr(lie, "CROSS_CHECK", True)


@pytest.fixture
def rng():
    return random.Random(20240607)


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion."""
    lines = request.config.stash[_ACCEPTANCE]

    def record(label: str, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        lines.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
