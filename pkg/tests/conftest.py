"""Shared fixtures: the two running-example substitutions, the example
tile systems, and their computed graphs (session-scoped, computed once)."""

import pathlib

import pytest

from tilegraphs import corona as co
from tilegraphs import io as tio
from tilegraphs import rauzygraphs as rg
from tilegraphs import selfaffine as sa
from tilegraphs import stepped as st
from tilegraphs import substitution as su

DATA = pathlib.Path(__file__).parent / "data"

SIGMA1_TEXT = "1 -> 1112\n2 -> 113\n3 -> 1\n"
SIGMA2_TEXT = "1 -> 112\n2 -> 1113\n3 -> 1\n"


@pytest.fixture(scope="session")
def sigma1():
    return su.parse_substitution(SIGMA1_TEXT)


@pytest.fixture(scope="session")
def sigma2():
    return su.parse_substitution(SIGMA2_TEXT)


@pytest.fixture(scope="session")
def S1(sigma1):
    return st.spectral_data(sigma1)


@pytest.fixture(scope="session")
def S2(sigma2):
    return st.spectral_data(sigma2)


@pytest.fixture(scope="session")
def gc1(S1):
    return rg.contact_graph(S1)


@pytest.fixture(scope="session")
def gc2(S2):
    return rg.contact_graph(S2)


@pytest.fixture(scope="session")
def alg2_1(S1):
    return co.algorithm2(S1)


@pytest.fixture(scope="session")
def alg2_2(S2):
    return co.algorithm2(S2)


@pytest.fixture(scope="session")
def gb1_frozen():
    """Boundary graph of sigma1, recorded from the enumeration oracle."""
    return tio.face_graph_from_json((DATA / "sigma1_boundary_simple.json").read_text())


@pytest.fixture(scope="session")
def gb2_frozen():
    """Boundary graph of sigma2, recorded from the enumeration oracle."""
    return tio.face_graph_from_json((DATA / "sigma2_boundary_simple.json").read_text())


# ------------------------------------------------------------ tile systems

FIG_TILE = sa.TileSystem(((2, -1), (1, 2)), tuple((k, 0) for k in range(5)))
TWINDRAGON = sa.TileSystem(((1, -1), (1, 1)), ((0, 0), (1, 0)))
SQUARE4 = sa.TileSystem(((2, 0), (0, 2)), ((0, 0), (1, 0), (0, 1), (1, 1)))


@pytest.fixture(scope="session")
def fig_tile():
    return FIG_TILE


@pytest.fixture(scope="session")
def twindragon():
    return TWINDRAGON


@pytest.fixture(scope="session")
def square4():
    return SQUARE4


@pytest.fixture(scope="session")
def tile_results():
    """(tile, algorithm1 result, oracle graph) for the three named examples."""
    out = []
    for t in (FIG_TILE, TWINDRAGON, SQUARE4):
        out.append((t, sa.algorithm1(t), sa.naive_neighbors(t)))
    return out
