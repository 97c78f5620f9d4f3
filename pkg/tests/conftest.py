from __future__ import annotations

from pathlib import Path

import pytest

from fano_lines.fourfold import load

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"
NAMES = ("FX-N1", "FX-N2", "FX-C1", "FX-C2")


@pytest.fixture(scope="session")
def fixtures():
    return {n: load(FIXTURES / f"{n}.json") for n in NAMES}


@pytest.fixture(scope="session")
def n1(fixtures):
    return fixtures["FX-N1"]


@pytest.fixture(scope="session")
def n2(fixtures):
    return fixtures["FX-N2"]


@pytest.fixture(scope="session")
def c1(fixtures):
    return fixtures["FX-C1"]


@pytest.fixture(scope="session")
def c2(fixtures):
    return fixtures["FX-C2"]


# one summary line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def record_criterion(number: int, ok: bool, text: str) -> bool:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {text}"
    ACCEPTANCE[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
