"""Pytest configuration and shared fixtures."""

import sys
from pathlib import Path

import pytest

# Add the repository root to path so that `src` imports resolve
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.constructions import paley  # noqa: E402
from src.graphs.core import Graph  # noqa: E402


def cycle(n: int) -> Graph:
    return Graph.from_edge_list(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


@pytest.fixture(autouse=True)
def isolated_home(tmp_path, monkeypatch):
    """Keep ConfigManager away from the real user configuration."""
    monkeypatch.setenv("HOME", str(tmp_path / "home"))
    monkeypatch.setenv("APPDATA", str(tmp_path / "appdata"))
    monkeypatch.delenv("PSEUDOGRAPH_SEED", raising=False)


@pytest.fixture
def k4() -> Graph:
    return Graph.complete(4, name="K4")


@pytest.fixture
def k5() -> Graph:
    return Graph.complete(5, name="K5")


@pytest.fixture
def c5() -> Graph:
    return cycle(5)


@pytest.fixture
def c6() -> Graph:
    return cycle(6)


@pytest.fixture
def path3() -> Graph:
    return Graph.from_edge_list(3, [(0, 1), (1, 2)], name="P3")


@pytest.fixture
def k33() -> Graph:
    return Graph.from_edge_list(6, [(a, b) for a in range(3) for b in range(3, 6)], name="K33")


@pytest.fixture
def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(i + 5, (i + 2) % 5 + 5) for i in range(5)]
    return Graph.from_edge_list(10, outer + spokes + inner, name="Petersen")


@pytest.fixture
def paley13() -> Graph:
    return paley(13)


@pytest.fixture
def paley25() -> Graph:
    return paley(25)
