"""Tests for bidimenger.analysis.menger_edge."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bidimenger.errors import ContractError, PreconditionError
from bidimenger.graph.core import Walk
from bidimenger.graph.transforms import Digraph
from bidimenger.graph.walks import is_path, is_trail, pairwise_edge_disjoint
from bidimenger.analysis.menger_edge import OutcomeKind, directed_edge_menger, edge_menger
from bidimenger.analysis.pathfinder import find_path
from bidimenger.lab.flow import edge_menger_number
from bidimenger.lab.generators import (
    gen_edge_counterexample,
    greedy_disjoint_paths,
    random_digraph,
    random_edge_clean_instance,
)
from bidimenger.lab.oracles import OracleMode, brute_menger
from tests.strategies import PROPERTY_SETTINGS


def _ext_paths(count):
    return [
        Walk.from_sequence(["x'", f"x'a{i}", f"a{i}", f"a{i}x", "x"]) for i in range(1, count + 1)
    ]


@pytest.fixture
def diamond():
    """x→a→b→y with shortcuts x→b and a→y."""
    return Digraph(
        ("x", "a", "b", "y"),
        (("xa", "x", "a"), ("xb", "x", "b"), ("ab", "a", "b"), ("ay", "a", "y"), ("by", "b", "y")),
    )


class TestSmallCases:
    def test_first_path(self, f_edge):
        outcome = edge_menger(f_edge.graph, "u", "w")
        assert outcome.kind is OutcomeKind.PATHS
        assert outcome.paths == (Walk(("u", "w"), ("e",)),)

    def test_single_edge_separates(self, f_edge):
        outcome = edge_menger(f_edge.graph, "u", "w", [Walk(("u", "w"), ("e",))])
        assert outcome.kind is OutcomeKind.SEPARATOR
        assert outcome.separator == {"e"}

    def test_no_path_means_empty_separator(self, f_nopath):
        outcome = edge_menger(f_nopath.graph, "u", "w")
        assert outcome.kind is OutcomeKind.SEPARATOR
        assert outcome.separator == frozenset()

    def test_fourth_path_keeps_first_edges(self, f_ext):
        given_paths = _ext_paths(3)
        outcome = edge_menger(f_ext.graph, "x'", "x", given_paths)
        assert outcome.kind is OutcomeKind.PATHS
        assert len(outcome.paths) == 4
        assert pairwise_edge_disjoint(outcome.paths)
        for given_path, returned in zip(given_paths, outcome.paths):
            assert returned.edges[0] == given_path.edges[0]

    def test_four_paths_are_maximal(self, f_ext):
        outcome = edge_menger(f_ext.graph, "x'", "x", _ext_paths(4))
        assert outcome.kind is OutcomeKind.SEPARATOR
        assert outcome.separator == {"x'a1", "x'a2", "x'a3", "x'a4"}
        assert find_path(f_ext.graph, "x'", "x", forbidden_edges=outcome.separator) is None


class TestRerouting:
    def test_shared_edge_is_rerouted(self, diamond):
        first = Walk.from_sequence(["x", "xa", "a", "ab", "b", "by", "y"])
        outcome = directed_edge_menger(diamond, "x", "y", [first])
        assert outcome.kind is OutcomeKind.PATHS
        assert outcome.depth >= 1
        assert outcome.paths[0].edges[0] == "xa"
        assert {p.edges[0] for p in outcome.paths} == {"xa", "xb"}
        assert pairwise_edge_disjoint(outcome.paths)

    def test_then_separated(self, diamond):
        paths = directed_edge_menger(
            diamond, "x", "y", [Walk.from_sequence(["x", "xa", "a", "ay", "y"])]
        ).paths
        outcome = directed_edge_menger(diamond, "x", "y", paths)
        assert outcome.kind is OutcomeKind.SEPARATOR
        assert len(outcome.separator) == 2 == edge_menger_number(diamond, "x", "y")


class TestContracts:
    def test_same_terminals(self, f_edge):
        with pytest.raises(ContractError):
            edge_menger(f_edge.graph, "u", "u")

    def test_malformed_path(self, f_path2):
        with pytest.raises(ContractError):
            edge_menger(f_path2.graph, "u", "w", [Walk.from_sequence(["u", "e1", "v"])])

    def test_overlapping_paths(self, f_edge):
        p = Walk(("u", "w"), ("e",))
        with pytest.raises(ContractError, match="edge-disjoint"):
            edge_menger(f_edge.graph, "u", "w", [p, p])

    def test_source_not_edge_clean(self):
        graph, x, y = gen_edge_counterexample(1)
        with pytest.raises(PreconditionError) as exc_info:
            edge_menger(graph, x, y)
        witness = exc_info.value.witness
        assert witness.start == witness.end == x
        assert is_trail(graph, witness)


class TestAgainstOracles:
    @PROPERTY_SETTINGS
    @given(st.integers(0, 10_000), st.integers(3, 6), st.integers(0, 2))
    def test_outcome_matches_exhaustive_search(self, seed, n, k):
        graph, x, y = random_edge_clean_instance(n, 2 * n, seed)
        paths = greedy_disjoint_paths(graph, x, y, k)
        outcome = edge_menger(graph, x, y, paths)
        report = brute_menger(graph, x, y, OracleMode.EDGE, k=len(paths))
        if outcome.kind is OutcomeKind.PATHS:
            assert report.max_disjoint == len(paths) + 1
            assert report.min_separator is None
            assert all(is_path(graph, p) for p in outcome.paths)
        else:
            assert report.max_disjoint == len(paths)
            assert len(outcome.separator) == len(paths)

    @PROPERTY_SETTINGS
    @given(st.integers(0, 10_000), st.integers(2, 7))
    def test_directed_count_matches_max_flow(self, seed, n):
        digraph = random_digraph(n, 2 * n, seed)
        x, y = "v0", f"v{n - 1}"
        paths = ()
        for _ in range(len(digraph.arcs) + 1):
            outcome = directed_edge_menger(digraph, x, y, paths)
            if outcome.kind is OutcomeKind.SEPARATOR:
                break
            paths = outcome.paths
        assert len(paths) == edge_menger_number(digraph, x, y)
