"""Tests for bidimenger.analysis.menger_vertex."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bidimenger.errors import ContractError, PreconditionError
from bidimenger.graph.core import Sign, SignedVertex, Walk, signed_set, vertices_of
from bidimenger.graph.walks import is_set_path, pairwise_vertex_disjoint
from bidimenger.analysis.menger_edge import OutcomeKind
from bidimenger.analysis.menger_vertex import (
    directed_vertex_menger,
    find_set_path,
    relax_endpoints,
    simplify,
    vertex_menger,
)
from bidimenger.lab.flow import vertex_menger_number
from bidimenger.lab.generators import (
    grid_proof_paths,
    greedy_disjoint_set_paths,
    random_clean_instance,
    random_digraph,
)
from bidimenger.lab.fixtures import fixtures
from bidimenger.lab.oracles import OracleMode, brute_is_clean, brute_menger, enum_set_paths
from tests.strategies import PROPERTY_SETTINGS, bidirected_graphs, signed_sets

START_LEFT = Walk.from_sequence(["x1", "x1y1", "y1"])
START_RIGHT = Walk.from_sequence(["x2", "x2y2", "y2"])


class TestSimplify:
    def test_both_signs_in_sources(self, f_start):
        result = simplify(f_start.graph, f_start.sources, f_start.targets)
        assert result.report.signs_set_plus == ("x1",)
        assert result.report.dropped_sources == (SignedVertex("x1", Sign.MINUS),)
        assert result.graph.sign("x1", "x1y1") is Sign.PLUS
        assert SignedVertex("x1", Sign.MINUS) not in result.sources

    def test_missing_sign_loses_edges(self, f_path2):
        result = simplify(f_path2.graph, signed_set([("v", "+")]), signed_set([("w", "+")]))
        assert result.report.deleted_edges == {"v": ("e2",)}
        assert not result.graph.has_edge("e2")
        assert result.report.changed

    def test_trivial_member_isolated(self, f_path2):
        result = simplify(f_path2.graph, signed_set([("v", "+")]), signed_set([("v", "-")]))
        assert result.report.isolated == ("v",)
        assert result.graph.degree("v") == 0

    def test_paths_are_preserved(self, f_start):
        graph, sources, targets = f_start.graph, f_start.sources, f_start.targets
        result = simplify(graph, sources, targets)
        before = {str(p) for p in enum_set_paths(graph, sources, targets)}
        after = {str(p) for p in enum_set_paths(result.graph, result.sources, result.targets)}
        assert before == after

    @pytest.mark.parametrize("name", sorted(n for n, f in fixtures().items() if f.sources))
    def test_guarantees_on_fixtures(self, corpus, name):
        fixture = corpus[name]
        _check_simplified(fixture.graph, fixture.sources, fixture.targets)

    @PROPERTY_SETTINGS
    @given(st.data())
    def test_guarantees_on_random_sets(self, data):
        graph = data.draw(bidirected_graphs(max_vertices=5))
        sources = data.draw(signed_sets(graph))
        targets = data.draw(signed_sets(graph))
        _check_simplified(graph, sources, targets)

    def test_shared_member_keeps_trivial_path(self, f_path2):
        both = signed_set([("v", "+"), ("v", "-")])
        result = simplify(f_path2.graph, both, both)
        assert result.sources == signed_set([("v", "+")])
        found = enum_set_paths(result.graph, result.sources, result.targets)
        assert [str(p) for p in found] == ["v"]


def _check_simplified(graph, sources, targets):
    result = simplify(graph, sources, targets)
    simple, xs, ys = result.graph, result.sources, result.targets
    strict = {str(p) for p in enum_set_paths(simple, xs, ys)}
    assert {str(p) for p in enum_set_paths(graph, sources, targets)} == strict
    assert {str(p) for p in enum_set_paths(simple, xs, ys, relaxed=True)} <= strict
    for v in vertices_of(xs):
        assert not {SignedVertex(v, Sign.PLUS), SignedVertex(v, Sign.MINUS)} <= xs
    before = brute_menger(graph, sources, targets, OracleMode.VERTEX).max_disjoint
    assert brute_menger(simple, xs, ys, OracleMode.VERTEX).max_disjoint == before
    if brute_is_clean(graph, sources):
        assert brute_is_clean(simple, xs)


class TestFindSetPath:
    def test_signed_start(self, f_start):
        path = find_set_path(f_start.graph, f_start.sources, f_start.targets)
        assert path is not None
        assert is_set_path(f_start.graph, f_start.sources, f_start.targets, path)

    def test_trivial(self, f_path2):
        path = find_set_path(f_path2.graph, signed_set([("v", "+")]), signed_set([("v", "-")]))
        assert path == Walk.trivial("v")

    def test_none(self, f_nopath):
        assert find_set_path(f_nopath.graph, f_nopath.sources, f_nopath.targets) is None


class TestVertexMenger:
    def test_prescribed_start_is_kept_but_not_its_sign(self, f_start):
        outcome = vertex_menger(f_start.graph, f_start.sources, f_start.targets, f_start.paths)
        assert outcome.kind is OutcomeKind.PATHS
        assert outcome.paths == (START_LEFT, START_RIGHT)

    def test_two_paths_are_maximal(self, f_start):
        outcome = vertex_menger(
            f_start.graph, f_start.sources, f_start.targets, [START_LEFT, START_RIGHT]
        )
        assert outcome.kind is OutcomeKind.SEPARATOR
        assert len(outcome.separator) == 2

    def test_first_path(self, f_path2):
        outcome = vertex_menger(f_path2.graph, f_path2.sources, f_path2.targets)
        assert outcome.kind is OutcomeKind.PATHS
        assert outcome.paths == (Walk.from_sequence(["u", "e1", "v", "e2", "w"]),)

    def test_one_vertex_separates(self, f_path2):
        outcome = vertex_menger(
            f_path2.graph,
            f_path2.sources,
            f_path2.targets,
            [Walk.from_sequence(["u", "e1", "v", "e2", "w"])],
        )
        assert outcome.kind is OutcomeKind.SEPARATOR
        assert len(outcome.separator) == 1

    def test_grid_is_not_clean(self, grid1):
        graph, sources, targets = grid1
        with pytest.raises(PreconditionError) as exc_info:
            vertex_menger(graph, sources, targets, grid_proof_paths(1)[:1])
        witness = exc_info.value.witness
        assert is_set_path(graph, sources, sources, witness)

    def test_trivial_input_rejected(self, f_path2):
        xs, ys = signed_set([("v", "+")]), signed_set([("v", "-")])
        with pytest.raises(ContractError, match="Trivial"):
            vertex_menger(f_path2.graph, xs, ys, [Walk.trivial("v")])

    def test_overlapping_input_rejected(self, f_start):
        with pytest.raises(ContractError, match="vertex-disjoint"):
            vertex_menger(f_start.graph, f_start.sources, f_start.targets, [START_LEFT, START_LEFT])


class TestRelaxEndpoints:
    def test_pendants(self, f_path2):
        graph, xs, ys = relax_endpoints(f_path2.graph, f_path2.sources, f_path2.targets)
        assert graph.num_vertices() == 5
        assert graph.num_edges() == 4
        (source,) = xs
        (target,) = ys
        assert source.sign is Sign.MINUS and target.sign is Sign.PLUS
        path = find_set_path(graph, xs, ys)
        assert path is not None and path.length == 4

    def test_paths_may_pass_through_members(self, f_path2):
        xs = signed_set([("u", "-")])
        ys = signed_set([("v", "+"), ("w", "+")])
        strict = enum_set_paths(f_path2.graph, xs, ys)
        assert {str(p) for p in strict} == {"u e1 v"}
        graph, rx, ry = relax_endpoints(f_path2.graph, xs, ys)
        relaxed = enum_set_paths(graph, rx, ry)
        assert len(relaxed) == 2


class TestAgainstOracles:
    @PROPERTY_SETTINGS
    @given(st.integers(0, 10_000), st.integers(3, 6), st.integers(0, 2))
    def test_outcome_matches_exhaustive_search(self, seed, n, k):
        graph, sources, targets = random_clean_instance(n, 2 * n, seed)
        paths = greedy_disjoint_set_paths(graph, sources, targets, k)
        outcome = vertex_menger(graph, sources, targets, paths)
        report = brute_menger(graph, sources, targets, OracleMode.VERTEX, k=len(paths))
        if outcome.kind is OutcomeKind.PATHS:
            assert report.max_disjoint == len(paths) + 1
            assert pairwise_vertex_disjoint(outcome.paths)
            for given_path, returned in zip(paths, outcome.paths):
                assert returned.start == given_path.start
        else:
            assert report.max_disjoint == len(paths)
            assert len(outcome.separator) == len(paths)

    @pytest.mark.parametrize("seed", range(100))
    def test_pendants_count_relaxed_paths(self, seed):
        n = 3 + seed % 4
        graph, sources, targets = random_clean_instance(n, 2 * n, seed)
        relaxed_graph, xs, ys = relax_endpoints(graph, sources, targets)
        paths = ()
        for _ in range(relaxed_graph.num_vertices() + 1):
            outcome = vertex_menger(relaxed_graph, xs, ys, paths)
            if outcome.kind is OutcomeKind.SEPARATOR:
                break
            paths = outcome.paths
        report = brute_menger(graph, sources, targets, OracleMode.VERTEX, relaxed=True)
        assert len(paths) == report.max_disjoint

    @PROPERTY_SETTINGS
    @given(st.integers(0, 10_000), st.integers(4, 7))
    def test_directed_count_matches_max_flow(self, seed, n):
        digraph = random_digraph(n, 2 * n, seed)
        sources, targets = ["v0", "v1"], [f"v{n - 2}", f"v{n - 1}"]
        paths = ()
        for _ in range(n + 1):
            outcome = directed_vertex_menger(digraph, sources, targets, paths)
            if outcome.kind is OutcomeKind.SEPARATOR:
                break
            paths = outcome.paths
        assert len(paths) == vertex_menger_number(digraph, sources, targets)
