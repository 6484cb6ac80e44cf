"""Tests for bidimenger.analysis.pathfinder."""

import pytest
from hypothesis import given

from bidimenger.errors import ContractError, StructureError
from bidimenger.graph.core import SIGNS, Sign, SignedVertex, Walk, signed_set
from bidimenger.graph.transforms import Digraph, embed_directed
from bidimenger.graph.walks import is_path, is_trail, signed_end, signed_start
from bidimenger.analysis.pathfinder import (
    default_orientation,
    find_clean_witness,
    find_closed_trail,
    find_path,
    find_signed_path,
    find_signed_trail,
    is_clean,
    is_edge_clean,
    line_graph,
    trail_between_edges,
    walk_reachable,
)
from bidimenger.lab.oracles import (
    brute_is_clean,
    brute_is_edge_clean,
    brute_signed_path,
)
from tests.strategies import PROPERTY_SETTINGS, bidirected_graphs, graphs_with_pair, signed_sets

PLUS, MINUS = Sign.PLUS, Sign.MINUS


def sv(vertex, sign):
    return SignedVertex(vertex, sign)


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------


class TestFindSignedPath:
    def test_single_edge(self, f_edge):
        path = find_signed_path(f_edge.graph, sv("u", MINUS), sv("w", PLUS))
        assert path == Walk(("u", "w"), ("e",))

    def test_wrong_sign_pair(self, f_edge):
        assert find_signed_path(f_edge.graph, sv("u", PLUS), sv("w", PLUS)) is None

    def test_two_edges(self, f_path2):
        path = find_signed_path(f_path2.graph, sv("u", MINUS), sv("w", PLUS))
        assert str(path) == "u e1 v e2 w"

    def test_no_path_through_equal_signs(self, f_nopath):
        for a in SIGNS:
            for b in SIGNS:
                assert find_signed_path(f_nopath.graph, sv("u", a), sv("w", b)) is None

    def test_trail_is_not_a_path(self, f_trail_only):
        assert find_path(f_trail_only.graph, "u", "w") is None

    def test_forbidden_edges(self, f_path2):
        assert find_path(f_path2.graph, "u", "w", forbidden_edges=["e2"]) is None

    def test_same_endpoint_rejected(self, f_edge):
        with pytest.raises(ContractError):
            find_signed_path(f_edge.graph, sv("u", MINUS), sv("u", PLUS))

    def test_unknown_vertex(self, f_edge):
        with pytest.raises(StructureError):
            find_signed_path(f_edge.graph, sv("zz", MINUS), sv("u", PLUS))

    def test_directed_embedding(self):
        d = Digraph(("a", "b", "c", "d"), (("ab", "a", "b"), ("bc", "b", "c"), ("dc", "d", "c")))
        g = embed_directed(d)
        assert str(find_path(g, "a", "c")) == "a ab b bc c"
        assert find_path(g, "a", "d") is None

    @PROPERTY_SETTINGS
    @given(graphs_with_pair())
    def test_agrees_with_exhaustive_search(self, case):
        graph, x, y = case
        for a in SIGNS:
            for b in SIGNS:
                found = find_signed_path(graph, sv(x, a), sv(y, b))
                expected = brute_signed_path(graph, sv(x, a), sv(y, b))
                assert (found is None) == (expected is None)
                if found is not None:
                    assert is_path(graph, found)
                    assert signed_start(graph, found) == sv(x, a)
                    assert signed_end(graph, found) == sv(y, b)


class TestWalkReachable:
    def test_reachable(self, f_path2):
        assert walk_reachable(f_path2.graph, [sv("u", MINUS)], {sv("w", PLUS)})
        assert not walk_reachable(f_path2.graph, [sv("u", PLUS)], {sv("w", PLUS)})

    def test_trivial_reach(self, f_path2):
        assert walk_reachable(f_path2.graph, [sv("v", PLUS)], {sv("v", MINUS)})
        assert not walk_reachable(
            f_path2.graph, [sv("v", PLUS)], {sv("v", MINUS)}, allow_trivial=False
        )


# ---------------------------------------------------------------------------
# Line graph and trails
# ---------------------------------------------------------------------------


class TestLineGraph:
    def test_alternating_pairs_only(self, f_path2, f_nopath):
        lg = line_graph(f_path2.graph, default_orientation(f_path2.graph))
        assert lg.graph.vertices == ("e1", "e2")
        assert lg.graph.num_edges() == 1
        assert lg.label[lg.graph.edge_ids[0]] == "v"
        empty = line_graph(f_nopath.graph, default_orientation(f_nopath.graph))
        assert empty.graph.num_edges() == 0

    def test_tau(self, f_path2):
        lg = line_graph(f_path2.graph, default_orientation(f_path2.graph))
        assert lg.tau("e1", "v") is PLUS
        assert lg.tau("e2", "v") is MINUS
        with pytest.raises(ContractError):
            lg.tau("e1", "w")

    def test_orientation_must_cover_edges(self, f_path2):
        with pytest.raises(ContractError):
            line_graph(f_path2.graph, {})

    def test_trail_round_trip(self, f_trail_only):
        trail = Walk.from_sequence("u um m mp p pq q qm m mw w".split())
        lg = line_graph(f_trail_only.graph, default_orientation(f_trail_only.graph))
        induced = lg.trail_to_path(trail)
        assert induced.vertices == trail.edges
        assert lg.path_to_trail(induced, "u") == trail

    def test_default_orientation(self, f_path2):
        away = default_orientation(f_path2.graph, away_from="v")
        assert away["e1"].tail == "v" and away["e2"].tail == "v"
        into = default_orientation(f_path2.graph, into="u")
        assert into["e1"].head == "u"


class TestTrails:
    def test_trail_through_triangle(self, f_trail_only):
        trail = find_signed_trail(f_trail_only.graph, sv("u", MINUS), sv("w", MINUS))
        assert trail is not None
        assert is_trail(f_trail_only.graph, trail)
        assert (trail.start, trail.end) == ("u", "w")
        assert trail.length == 5

    def test_no_trail(self, f_nopath):
        assert find_signed_trail(f_nopath.graph, sv("u", MINUS), sv("w", PLUS)) is None

    def test_same_vertex_rejected(self, f_trail_only):
        with pytest.raises(ContractError, match="is_edge_clean"):
            find_signed_trail(f_trail_only.graph, sv("m", MINUS), sv("m", PLUS))

    def test_trail_between_edges_empty_ends(self, f_path2):
        assert trail_between_edges(f_path2.graph, [], [("e2", "w")]) is None

    @PROPERTY_SETTINGS
    @given(graphs_with_pair(max_vertices=4, max_edges=6))
    def test_agrees_with_exhaustive_search(self, case):
        graph, x, y = case
        for a in SIGNS:
            for b in SIGNS:
                found = find_signed_trail(graph, sv(x, a), sv(y, b))
                expected = brute_signed_path(graph, sv(x, a), sv(y, b), trails=True)
                assert (found is None) == (expected is None)
                if found is not None:
                    assert is_trail(graph, found)
                    assert signed_start(graph, found) == sv(x, a)
                    assert signed_end(graph, found) == sv(y, b)


# ---------------------------------------------------------------------------
# Cleanness
# ---------------------------------------------------------------------------


class TestEdgeClean:
    def test_single_edge(self, f_edge):
        assert is_edge_clean(f_edge.graph, "u")

    def test_triangle_returns(self, f_trail_only):
        closed = find_closed_trail(f_trail_only.graph, "m")
        assert closed is not None
        assert closed.start == closed.end == "m"
        assert is_trail(f_trail_only.graph, closed)
        assert is_edge_clean(f_trail_only.graph, "u")

    def test_edge_counterexample_source(self, f_ext):
        assert is_edge_clean(f_ext.graph, "x'")

    def test_directed_source_without_in_arcs(self):
        d = Digraph(("a", "b", "c"), (("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a")))
        assert not is_edge_clean(embed_directed(d), "a")
        assert is_edge_clean(embed_directed(d.without_arcs_into("a")), "a")

    @PROPERTY_SETTINGS
    @given(bidirected_graphs(max_vertices=5, max_edges=6))
    def test_agrees_with_exhaustive_search(self, graph):
        for v in graph.vertices:
            assert is_edge_clean(graph, v) == brute_is_edge_clean(graph, v)


class TestClean:
    def test_signed_start_sources_clean(self, f_start):
        assert is_clean(f_start.graph, f_start.sources)

    def test_grid_sources_not_clean(self, grid1):
        graph, sources, _ = grid1
        witness = find_clean_witness(graph, sources)
        assert witness is not None
        assert is_path(graph, witness) and not witness.is_trivial
        assert signed_start(graph, witness) in sources
        assert signed_end(graph, witness) in sources

    def test_single_member_always_clean(self, f_trail_only):
        assert is_clean(f_trail_only.graph, signed_set([("m", "-")]))

    @PROPERTY_SETTINGS
    @given(bidirected_graphs(min_vertices=2, max_vertices=5, max_edges=7).flatmap(
        lambda g: signed_sets(g).map(lambda s: (g, s))
    ))
    def test_agrees_with_exhaustive_search(self, case):
        graph, sources = case
        assert is_clean(graph, sources) == brute_is_clean(graph, sources)
