from __future__ import annotations

import random

import pytest

from liga.params import get_params
from liga.pke import keygen

_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str):
    _ACCEPTANCE_LINES.append(line)


@pytest.fixture(scope="session")
def desk():
    return get_params("desk")


@pytest.fixture(scope="session")
def desk_keys(desk):
    sk, pk, info = keygen(desk, random.Random(1234), return_info=True)
    return sk, pk, info


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
