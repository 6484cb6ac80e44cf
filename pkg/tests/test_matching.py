"""Tests for bidimenger.analysis.matching."""

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bidimenger.errors import ContractError, StructureError
from bidimenger.analysis.matching import (
    Matching,
    UndirectedGraph,
    alternating_component_path,
    perfect_matching,
)
from tests.strategies import PROPERTY_SETTINGS


def _path4():
    return UndirectedGraph.from_pairs("abcd", [("a", "b"), ("b", "c"), ("c", "d")])


@st.composite
def undirected_graphs(draw, max_vertices=8):
    n = draw(st.integers(0, max_vertices))
    vertices = [f"n{i}" for i in range(n)]
    pairs = []
    if n >= 2:
        pairs = draw(
            st.lists(
                st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(
                    lambda t: t[0] != t[1]
                ),
                max_size=3 * n,
            )
        )
    return UndirectedGraph.from_pairs(vertices, [(vertices[a], vertices[b]) for a, b in pairs])


class TestUndirectedGraph:
    def test_loop_rejected(self):
        with pytest.raises(StructureError):
            UndirectedGraph.from_pairs("a", [("a", "a")])

    def test_undeclared_rejected(self):
        with pytest.raises(StructureError):
            UndirectedGraph.from_pairs("a", [("a", "b")])

    def test_neighbors_sorted(self):
        assert _path4().neighbors()["b"] == ["a", "c"]


class TestMatching:
    def test_overlap_rejected(self):
        with pytest.raises(ContractError, match="overlap"):
            Matching.from_pairs([("a", "b"), ("b", "c")])

    def test_mates_and_cover(self):
        m = Matching.from_pairs([("a", "b"), ("c", "d")])
        assert m.mates()["b"] == "a"
        assert m.covered() == {"a", "b", "c", "d"}
        assert m.is_perfect_for(_path4())
        assert len(m) == 2


class TestPerfectMatching:
    def test_path_of_four(self):
        m = perfect_matching(_path4())
        assert m is not None
        assert m.edges == {frozenset("ab"), frozenset("cd")}

    def test_odd_order(self):
        triangle = UndirectedGraph.from_pairs("abc", [("a", "b"), ("b", "c"), ("a", "c")])
        assert perfect_matching(triangle) is None

    def test_star_has_none(self):
        star = UndirectedGraph.from_pairs("abcd", [("a", "b"), ("a", "c"), ("a", "d")])
        assert perfect_matching(star) is None

    def test_blossom(self):
        # a triangle with two pendants forces augmentation through an odd cycle
        g = UndirectedGraph.from_pairs(
            "abcdef",
            [("a", "b"), ("b", "c"), ("c", "a"), ("a", "d"), ("b", "e"), ("c", "f")],
        )
        m = perfect_matching(g)
        assert m is not None and m.is_perfect_for(g)

    def test_empty_graph(self):
        m = perfect_matching(UndirectedGraph.from_pairs([], []))
        assert m is not None and len(m) == 0

    def test_initial_matching_seeds_search(self):
        g = _path4()
        m = perfect_matching(g, initial=Matching.from_pairs([("b", "c")]))
        assert m is not None and m.is_perfect_for(g)

    def test_initial_outside_graph_rejected(self):
        with pytest.raises(ContractError):
            perfect_matching(_path4(), initial=Matching.from_pairs([("a", "d")]))

    @PROPERTY_SETTINGS
    @given(undirected_graphs())
    def test_agrees_with_networkx(self, graph):
        nxg = nx.Graph()
        nxg.add_nodes_from(graph.vertices)
        nxg.add_edges_from(tuple(p) for p in graph.edges)
        maximum = nx.max_weight_matching(nxg, maxcardinality=True)
        expected = 2 * len(maximum) == len(graph.vertices)
        m = perfect_matching(graph)
        assert (m is not None) == expected
        if m is not None:
            assert m.is_perfect_for(graph)


class TestAlternatingPath:
    def test_walks_to_other_exposed_vertex(self):
        g = _path4()
        near = Matching.from_pairs([("b", "c")])
        perfect = Matching.from_pairs([("a", "b"), ("c", "d")])
        assert alternating_component_path(g, near, perfect, "a") == ["a", "b", "c", "d"]

    def test_requires_two_exposed(self):
        g = _path4()
        perfect = Matching.from_pairs([("a", "b"), ("c", "d")])
        with pytest.raises(ContractError):
            alternating_component_path(g, perfect, perfect, "a")
