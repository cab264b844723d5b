"""Shared test fixtures."""

import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from raaglift.config import Config
from raaglift.covering import CoveringMap, require_valid
from raaglift.data_loader import DocumentLoader
from raaglift.graph_core import Graph

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

settings.register_profile(
    "raaglift",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile(
    "acceptance",
    parent=settings.get_profile("raaglift"),
    max_examples=500,
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "raaglift"))


@pytest.fixture
def config() -> Config:
    """Provide a Config instance using default project paths."""
    return Config()


@pytest.fixture
def loader(config: Config) -> DocumentLoader:
    return DocumentLoader(config)


@pytest.fixture
def c4() -> Graph:
    """The 4-cycle w - x - y - z - w."""
    return Graph.from_edges("wxyz", [("w", "x"), ("x", "y"), ("y", "z"), ("z", "w")])


def _cover(loader: DocumentLoader, name: str) -> CoveringMap:
    return require_valid(loader.load_cover(FIXTURES / "covers" / f"{name}.yaml"))


@pytest.fixture
def id_c4(loader: DocumentLoader) -> CoveringMap:
    return _cover(loader, "id_c4")


@pytest.fixture
def id_k3(loader: DocumentLoader) -> CoveringMap:
    return _cover(loader, "id_k3")


@pytest.fixture
def c8(loader: DocumentLoader) -> CoveringMap:
    """The 8-cycle double covering the 4-cycle."""
    return _cover(loader, "c8")


@pytest.fixture
def hex_cover(loader: DocumentLoader) -> CoveringMap:
    return _cover(loader, "hex")


@pytest.fixture
def notlift(loader: DocumentLoader) -> CoveringMap:
    return _cover(loader, "notlift")


@pytest.fixture
def free(loader: DocumentLoader) -> CoveringMap:
    """Nine isolated vertices triple covering three."""
    return _cover(loader, "free")


@pytest.fixture
def automorphism(loader: DocumentLoader):
    """Load a fixture automorphism over a given graph."""

    def load(name: str, g: Graph):
        return loader.load_automorphism(FIXTURES / "automorphisms" / f"{name}.yaml", g)

    return load
