"""Tests for bidimenger.io.certificates."""

import pytest

from bidimenger.analysis.appendage import compute_appendage
from bidimenger.analysis.menger_edge import OutcomeKind, edge_menger
from bidimenger.analysis.menger_vertex import vertex_menger
from bidimenger.analysis.pathfinder import find_clean_witness, find_signed_path
from bidimenger.graph.core import Sign, SignedVertex, Walk, make_graph
from bidimenger.io.bgf import document
from bidimenger.io.certificates import (
    Certificate,
    Outcome,
    PathWitness,
    Query,
    check_certificate,
    edge_menger_certificate,
    make_certificate,
    path_witness,
    signed_path_certificate,
    vertex_menger_certificate,
)

START_LEFT = Walk.from_sequence(["x1", "x1y1", "y1"])
START_RIGHT = Walk.from_sequence(["x2", "x2y2", "y2"])


def _doc(fixture):
    sets = {}
    if fixture.sources:
        sets["X"] = fixture.sources
    if fixture.targets:
        sets["Y"] = fixture.targets
    return document(fixture.graph, sets)


class TestOutcome:
    @pytest.mark.parametrize(
        "outcome, code",
        [
            (Outcome.PATHS, 0),
            (Outcome.FOUND, 0),
            (Outcome.TRUE, 0),
            (Outcome.APPENDAGE, 0),
            (Outcome.SEPARATOR, 1),
            (Outcome.ABSENT, 1),
            (Outcome.FALSE, 1),
        ],
    )
    def test_exit_code(self, outcome, code):
        assert outcome.exit_code == code


class TestBuilders:
    def test_path_witness_signs(self, f_path2):
        witness = path_witness(f_path2.graph, Walk.from_sequence(["u", "e1", "v", "e2", "w"]))
        assert witness.sequence == ["u", "e1", "v", "e2", "w"]
        assert witness.signs == [("-", "+"), ("-", "+")]

    def test_json_round_trip(self, f_start):
        outcome = vertex_menger(f_start.graph, f_start.sources, f_start.targets, f_start.paths)
        cert = vertex_menger_certificate(f_start.graph, "X", "Y", f_start.paths, outcome)
        text = cert.to_json()
        assert '"format": "bidimenger-certificate"' in text
        assert Certificate.from_json(text) == cert

    def test_separator_is_sorted(self, f_ext):
        paths = [
            Walk.from_sequence(["x'", f"x'a{i}", f"a{i}", f"a{i}x", "x"]) for i in range(1, 5)
        ]
        outcome = edge_menger(f_ext.graph, "x'", "x", paths)
        cert = edge_menger_certificate(f_ext.graph, "x'", "x", paths, outcome)
        assert cert.outcome is Outcome.SEPARATOR
        assert cert.separator == ["x'a1", "x'a2", "x'a3", "x'a4"]


class TestCheckMenger:
    def test_vertex_paths(self, f_start):
        outcome = vertex_menger(f_start.graph, f_start.sources, f_start.targets, f_start.paths)
        cert = vertex_menger_certificate(f_start.graph, "X", "Y", f_start.paths, outcome)
        assert check_certificate(_doc(f_start), cert).valid

    def test_vertex_separator(self, f_start):
        prescribed = [START_LEFT, START_RIGHT]
        outcome = vertex_menger(f_start.graph, f_start.sources, f_start.targets, prescribed)
        cert = vertex_menger_certificate(f_start.graph, "X", "Y", prescribed, outcome)
        assert check_certificate(_doc(f_start), cert).valid

    def test_edge_paths(self, f_ext):
        prescribed = [Walk.from_sequence(["x'", "x'a1", "a1", "a1x", "x"])]
        outcome = edge_menger(f_ext.graph, "x'", "x", prescribed)
        cert = edge_menger_certificate(f_ext.graph, "x'", "x", prescribed, outcome)
        assert check_certificate(_doc(f_ext), cert).valid

    def test_short_separator_fails(self, f_start):
        prescribed = [START_LEFT, START_RIGHT]
        outcome = vertex_menger(f_start.graph, f_start.sources, f_start.targets, prescribed)
        cert = vertex_menger_certificate(f_start.graph, "X", "Y", prescribed, outcome)
        cert.separator = ["x2", "y1"]
        result = check_certificate(_doc(f_start), cert)
        assert not result.valid
        assert any("avoiding" in p for p in result.problems)

    def test_sharing_paths_fail(self, f_start):
        outcome = vertex_menger(f_start.graph, f_start.sources, f_start.targets, f_start.paths)
        cert = vertex_menger_certificate(f_start.graph, "X", "Y", f_start.paths, outcome)
        cert.paths = [cert.paths[0], cert.paths[0]]
        assert not check_certificate(_doc(f_start), cert).valid


class TestCheckPaths:
    def test_found(self, f_path2):
        source, target = SignedVertex("u", Sign.MINUS), SignedVertex("w", Sign.PLUS)
        found = find_signed_path(f_path2.graph, source, target)
        cert = signed_path_certificate(f_path2.graph, source, target, found)
        assert cert.outcome is Outcome.FOUND
        assert check_certificate(_doc(f_path2), cert).valid

    def test_absent(self, f_nopath):
        source, target = SignedVertex("u", Sign.MINUS), SignedVertex("w", Sign.PLUS)
        cert = signed_path_certificate(f_nopath.graph, source, target, None)
        assert check_certificate(_doc(f_nopath), cert).valid

    def test_false_absent_claim(self, f_path2):
        source, target = SignedVertex("u", Sign.MINUS), SignedVertex("w", Sign.PLUS)
        cert = signed_path_certificate(f_path2.graph, source, target, None)
        assert not check_certificate(_doc(f_path2), cert).valid

    def test_tampered_signs(self, f_path2):
        source, target = SignedVertex("u", Sign.MINUS), SignedVertex("w", Sign.PLUS)
        found = find_signed_path(f_path2.graph, source, target)
        cert = signed_path_certificate(f_path2.graph, source, target, found)
        cert.paths = [PathWitness(sequence=cert.paths[0].sequence, signs=[("+", "+"), ("-", "+")])]
        result = check_certificate(_doc(f_path2), cert)
        assert any("lists signs" in p for p in result.problems)

    def test_unknown_edge(self, f_path2):
        cert = make_certificate(
            f_path2.graph,
            Query(command="paths", source="u:-", target="w:+"),
            Outcome.FOUND,
            "find_signed_path",
        )
        cert.paths = [PathWitness(sequence=["u", "zz", "w"], signs=[("-", "+")])]
        assert not check_certificate(_doc(f_path2), cert).valid

    def test_trail(self, f_trail_only):
        cert = make_certificate(
            f_trail_only.graph,
            Query(command="trail", source="u:-", target="w:-"),
            Outcome.FOUND,
            "find_signed_trail",
            paths=[Walk.from_sequence("u um m mp p pq q qm m mw w".split())],
        )
        assert check_certificate(_doc(f_trail_only), cert).valid


class TestCheckProperties:
    def test_grid_not_clean(self, grid1):
        graph, sources, targets = grid1
        witness = find_clean_witness(graph, sources)
        cert = make_certificate(
            graph, Query(command="clean", x_set="X"), Outcome.FALSE, "find_clean_witness",
            paths=[witness],
        )
        doc = document(graph, {"X": sources, "Y": targets})
        assert check_certificate(doc, cert).valid

    def test_false_clean_claim(self, grid1):
        graph, sources, targets = grid1
        cert = make_certificate(graph, Query(command="clean", x_set="X"), Outcome.TRUE, "manual")
        doc = document(graph, {"X": sources, "Y": targets})
        assert not check_certificate(doc, cert).valid

    def test_edge_clean(self, f_trail_only):
        query = Query(command="edge-clean", x="u")
        cert = make_certificate(f_trail_only.graph, query, Outcome.TRUE, "find_closed_trail")
        assert check_certificate(_doc(f_trail_only), cert).valid

    def test_connectivity(self):
        graph = make_graph(["u", "w"], [("a", "u", "-", "w", "+"), ("b", "w", "-", "u", "+")])
        cycle = Walk.from_sequence(["u", "a", "w", "b", "u"])
        cert = make_certificate(
            graph, Query(command="connectivity"), Outcome.TRUE, "circular_decomposition",
            paths=[cycle], edges=["a", "b"], components=[["u", "w"]], strongly_connected=True,
        )
        assert check_certificate(document(graph), cert).valid

    def test_wrong_components(self, f_path2):
        cert = make_certificate(
            f_path2.graph, Query(command="connectivity"), Outcome.TRUE, "manual",
            edges=[], components=[["u", "v", "w"]],
        )
        result = check_certificate(_doc(f_path2), cert)
        assert not result.valid

    def test_acyclic_graph_has_singleton_components(self, f_path2):
        cert = make_certificate(
            f_path2.graph, Query(command="connectivity"), Outcome.FALSE, "manual",
            edges=[], components=[["u"], ["v"], ["w"]], strongly_connected=False,
        )
        result = check_certificate(_doc(f_path2), cert)
        assert result.valid and result.skipped == []

    def test_appendage(self):
        graph = make_graph(
            ["x", "a", "b"],
            [("xa", "x", "-", "a", "+"), ("ab", "a", "-", "b", "+"), ("f", "a", "-", "b", "-")],
        )
        path = Walk.from_sequence(["x", "xa", "a", "ab", "b"])
        appendage = compute_appendage(graph, path, "x")
        query = Query(command="appendage", x="x", prescribed=[path_witness(graph, path)])
        cert = make_certificate(
            graph, query, Outcome.APPENDAGE, "compute_appendage", edges=sorted(appendage.edges)
        )
        assert check_certificate(document(graph), cert).valid
        cert.edges = ["f"]
        assert not check_certificate(document(graph), cert).valid

    def test_unknown_command(self, f_edge):
        cert = make_certificate(f_edge.graph, Query(command="nope"), Outcome.TRUE, "manual")
        assert not check_certificate(_doc(f_edge), cert).valid


@pytest.fixture
def padded_detour():
    """x reaches y only by a walk that repeats v, padded to 15 vertices."""
    graph = make_graph(
        ["x", "v", "w", "y"] + [f"p{i}" for i in range(11)],
        [
            ("xv", "x", "-", "v", "+"),
            ("e1", "v", "-", "w", "-"),
            ("e2", "w", "+", "v", "-"),
            ("vy", "v", "+", "y", "-"),
        ],
    )
    return graph, SignedVertex("x", Sign.MINUS), SignedVertex("y", Sign.MINUS)


class TestOversizedClaims:
    def test_separator_is_skipped(self, padded_detour):
        graph, x, y = padded_detour
        xs, ys = frozenset([x]), frozenset([y])
        outcome = vertex_menger(graph, xs, ys)
        assert outcome.kind is OutcomeKind.SEPARATOR and not outcome.separator
        cert = vertex_menger_certificate(graph, "X", "Y", (), outcome)
        result = check_certificate(document(graph, {"X": xs, "Y": ys}), cert)
        assert result.valid
        assert any("limited to 10 vertices" in s for s in result.skipped)

    def test_absent_path_is_skipped(self, padded_detour):
        graph, x, y = padded_detour
        assert find_signed_path(graph, x, y) is None
        result = check_certificate(document(graph), signed_path_certificate(graph, x, y, None))
        assert result.valid
        assert result.skipped

    def test_small_claims_are_not_skipped(self, f_nopath):
        source, target = SignedVertex("u", Sign.MINUS), SignedVertex("w", Sign.PLUS)
        cert = signed_path_certificate(f_nopath.graph, source, target, None)
        result = check_certificate(_doc(f_nopath), cert)
        assert result.valid and result.skipped == []
