from __future__ import annotations

import pytest

from rankroute.generator import GeneratorConfig, generate
from rankroute.triangulation import Triangulation

A1, A2, A3, U = 0, 1, 2, 3
K4_COORDS = [(4, 1, 1), (1, 4, 2), (2, 2, 4), (3, 3, 3)]
K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture
def k4() -> Triangulation:
    return Triangulation.from_edges(K4_COORDS, K4_EDGES, (A1, A2, A3))


@pytest.fixture(scope="session")
def g30() -> Triangulation:
    return generate(GeneratorConfig(n=30, seed=42))


@pytest.fixture(scope="session")
def g50() -> Triangulation:
    return generate(GeneratorConfig(n=50, seed=3))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
