"""Tests for bidimenger.lab.oracles."""

import pytest

from bidimenger.errors import BoundExceededError, ContractError
from bidimenger.graph.core import Sign, SignedVertex, Walk
from bidimenger.lab.generators import gen_grid
from bidimenger.lab.oracles import (
    OracleMode,
    brute_appendage,
    brute_clean_witness,
    brute_closed_trail,
    brute_is_clean,
    brute_is_edge_clean,
    brute_menger,
    brute_signed_path,
    enum_paths,
    enum_set_paths,
    has_path_avoiding,
    has_set_path_avoiding,
    iter_walks_from,
    max_disjoint,
    min_hitting_set,
    signed_start_families,
)

PLUS, MINUS = Sign.PLUS, Sign.MINUS


class TestEnumeration:
    def test_walks_from_start(self, f_path2):
        walks = [str(w) for w in iter_walks_from(f_path2.graph, SignedVertex("u", MINUS))]
        assert walks == ["u e1 v", "u e1 v e2 w"]

    def test_wrong_start_sign(self, f_path2):
        assert list(iter_walks_from(f_path2.graph, SignedVertex("u", PLUS))) == []

    def test_trails_but_no_paths(self, f_trail_only):
        assert enum_paths(f_trail_only.graph, "u", "w", OracleMode.EDGE) == []
        trails = enum_paths(f_trail_only.graph, "u", "w", OracleMode.TRAIL)
        assert len(trails) == 2
        assert all(t.length == 5 for t in trails)

    def test_set_paths(self, f_start):
        found = {str(p) for p in enum_set_paths(f_start.graph, f_start.sources, f_start.targets)}
        assert found == {"x1 x1y1 y1", "x1 x1y2 y2", "x2 x2y2 y2"}

    def test_trivial_set_path(self, f_path2):
        xs = frozenset([SignedVertex("v", PLUS)])
        ys = frozenset([SignedVertex("v", MINUS)])
        assert enum_set_paths(f_path2.graph, xs, ys) == [Walk.trivial("v")]

    def test_vertex_bound(self):
        graph, sources, targets = gen_grid(2)
        with pytest.raises(BoundExceededError, match="limited to 10 vertices"):
            enum_set_paths(graph, sources, targets)


class TestSearch:
    def test_signed_path(self, f_path2):
        found = brute_signed_path(f_path2.graph, SignedVertex("u", MINUS), SignedVertex("w", PLUS))
        assert str(found) == "u e1 v e2 w"

    def test_same_vertex_has_no_path(self, f_trail_only):
        m = SignedVertex("m", MINUS)
        assert brute_signed_path(f_trail_only.graph, m, m) is None

    def test_closed_trail(self, f_trail_only):
        closed = brute_closed_trail(f_trail_only.graph, "m")
        assert closed is not None and closed.start == closed.end == "m"
        assert brute_is_edge_clean(f_trail_only.graph, "u")

    def test_clean(self, f_start, grid1):
        assert brute_is_clean(f_start.graph, f_start.sources)
        graph, sources, _ = grid1
        assert brute_clean_witness(graph, sources) is not None

    def test_avoiding(self, f_path2, f_start):
        assert has_path_avoiding(f_path2.graph, "u", "w")
        assert not has_path_avoiding(f_path2.graph, "u", "w", ["e1"])
        graph, xs, ys = f_start.graph, f_start.sources, f_start.targets
        assert not has_set_path_avoiding(graph, xs, ys, ["x1", "y2"])
        assert has_set_path_avoiding(graph, xs, ys, ["x2"])

    def test_avoiding_is_bounded(self):
        graph, sources, targets = gen_grid(2)
        with pytest.raises(BoundExceededError, match="limited to 10 vertices"):
            has_set_path_avoiding(graph, sources, targets)
        assert has_set_path_avoiding(graph, sources, targets, vertex_limit=graph.num_vertices())


class TestFamilies:
    def test_max_disjoint_and_hitting_set(self, f_ext):
        walks = enum_paths(f_ext.graph, "x'", "x", OracleMode.EDGE)
        assert len(walks) == 4
        assert len(max_disjoint(walks, by_edges=True)) == 4
        assert len(min_hitting_set(walks, by_edges=True)) == 4
        assert min_hitting_set(walks, by_edges=True, cap=3) is None

    def test_edge_report(self, f_ext):
        report = brute_menger(f_ext.graph, "x'", "x", OracleMode.EDGE)
        assert (report.max_disjoint, report.min_separator, report.path_count) == (4, 4, 4)

    def test_capped_report(self, f_ext):
        report = brute_menger(f_ext.graph, "x'", "x", OracleMode.EDGE, k=2)
        assert report.max_disjoint == 3
        assert report.min_separator is None

    def test_vertex_report(self, f_start):
        report = brute_menger(f_start.graph, f_start.sources, f_start.targets)
        assert report.max_disjoint == 2
        assert report.min_separator == 2

    def test_grid_has_no_two_disjoint_paths(self, grid1):
        graph, sources, targets = grid1
        report = brute_menger(graph, sources, targets, OracleMode.VERTEX)
        assert report.max_disjoint == 1
        assert report.min_separator >= 2

    def test_trail_mode_rejected(self, f_trail_only):
        with pytest.raises(ContractError):
            brute_menger(f_trail_only.graph, "u", "w", OracleMode.TRAIL)

    def test_start_sign_matters(self, f_start):
        graph, xs, ys = f_start.graph, f_start.sources, f_start.targets
        assert signed_start_families(graph, xs, ys, 2, SignedVertex("x1", PLUS)) == []
        assert len(signed_start_families(graph, xs, ys, 2, SignedVertex("x1", MINUS))) == 1


class TestBruteAppendage:
    def test_edge_bound(self, f_path2):
        path = Walk.from_sequence(["u", "e1", "v"])
        with pytest.raises(BoundExceededError):
            brute_appendage(f_path2.graph, path, "u", edge_limit=1)

    def test_anchor_must_start_path(self, f_path2):
        with pytest.raises(ContractError):
            brute_appendage(f_path2.graph, Walk.from_sequence(["u", "e1", "v"]), "v")
