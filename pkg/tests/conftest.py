"""Shared test fixtures: the named hand-checkable graphs and the grid family."""

from pathlib import Path

import pytest

from bidimenger.graph.core import make_graph
from bidimenger.lab.fixtures import fixtures
from bidimenger.lab.generators import gen_grid

DATA_DIR = Path(__file__).resolve().parent.parent / "data" / "fixtures"


@pytest.fixture(scope="session")
def corpus():
    """All named fixtures keyed by name."""
    return fixtures()


@pytest.fixture
def f_edge(corpus):
    return corpus["F_EDGE"]


@pytest.fixture
def f_path2(corpus):
    return corpus["F_PATH2"]


@pytest.fixture
def f_nopath(corpus):
    return corpus["F_NOPATH"]


@pytest.fixture
def f_start(corpus):
    """Two disjoint 𝒳–𝒴 paths exist, but none of those pairs starts in (x1, +)."""
    return corpus["F_SIGNED_START"]


@pytest.fixture
def f_ext(corpus):
    return corpus["F_EXT"]


@pytest.fixture
def f_trail_only(corpus):
    """A u–w trail through an unbalanced triangle, no u–w path."""
    return corpus["F_TRAIL_ONLY"]


@pytest.fixture
def triangle():
    """An alternating triangle a→b→c→a: the smallest cycle."""
    return make_graph(
        ["a", "b", "c"],
        [("ab", "a", "-", "b", "+"), ("bc", "b", "-", "c", "+"), ("ca", "c", "-", "a", "+")],
    )


@pytest.fixture(scope="session")
def grid1():
    return gen_grid(1)


@pytest.fixture
def data_dir():
    return DATA_DIR
