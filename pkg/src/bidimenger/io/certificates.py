"""Machine-checkable certificates and their independent checker.

A certificate records the query it answers, the outcome, and witnesses: paths as
alternating vertex/edge id sequences with the signs of every traversed edge, and
separators as id lists. :func:`check_certificate` re-verifies a certificate against
the graph document alone. Positive claims are checked with the walk taxonomy of
:mod:`bidimenger.graph.walks`; negative claims (separators, absent paths, clean
sets, appendage maximality) are checked by exhaustive search in
:mod:`bidimenger.lab.oracles`, never by the algorithms that produced them.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..errors import BoundExceededError, StructureError
from ..graph.core import SIGNS, BidirectedGraph, SignedVertex, Walk, WalkClass
from ..graph.walks import (
    classify_walk,
    is_path,
    is_set_path,
    is_trail,
    pairwise_edge_disjoint,
    pairwise_vertex_disjoint,
    signed_end,
    signed_start,
)
from ..lab.oracles import (
    brute_admissible,
    brute_appendage,
    brute_is_clean,
    brute_is_edge_clean,
    brute_signed_path,
    has_path_avoiding,
    has_set_path_avoiding,
)
from .bgf import GraphDocument, format_signed_vertex, parse_signed_vertex

logger = logging.getLogger(__name__)

CERTIFICATE_FORMAT = "bidimenger-certificate"

SignToken = Literal["+", "-"]


class Outcome(str, Enum):
    PATHS = "paths"
    SEPARATOR = "separator"
    FOUND = "found"
    ABSENT = "absent"
    TRUE = "true"
    FALSE = "false"
    APPENDAGE = "appendage"

    @property
    def exit_code(self) -> int:
        """0 for a positive answer, 1 for a negative one."""
        negative = (Outcome.SEPARATOR, Outcome.ABSENT, Outcome.FALSE)
        return 1 if self in negative else 0


class PathWitness(BaseModel):
    """A walk as ``v0 e1 v1 ...`` with (sign at tail, sign at head) per edge."""

    sequence: List[str] = Field(..., description="Alternating vertex and edge ids")
    signs: List[Tuple[SignToken, SignToken]] = Field(
        default_factory=list, description="Signs of each traversed edge at its tail and head"
    )


class Query(BaseModel):
    """What was asked; ``x``/``y`` are vertices, ``x_set``/``y_set`` set names."""

    command: str
    source: Optional[str] = Field(None, description="Signed start, e.g. 'v:+'")
    target: Optional[str] = Field(None, description="Signed end, e.g. 'w:-'")
    x: Optional[str] = None
    y: Optional[str] = None
    x_set: Optional[str] = None
    y_set: Optional[str] = None
    prescribed: List[PathWitness] = Field(default_factory=list)


class Provenance(BaseModel):
    algorithm: str
    depth: int = 0
    timings: Optional[Dict[str, float]] = Field(None, description="Seconds per phase")


class Certificate(BaseModel):
    """Answer to one query, self-contained given the graph document."""

    format: Literal["bidimenger-certificate"] = CERTIFICATE_FORMAT
    version: int = 1
    query: Query
    outcome: Outcome
    paths: List[PathWitness] = Field(default_factory=list)
    separator: Optional[List[str]] = None
    edges: Optional[List[str]] = None
    components: Optional[List[List[str]]] = None
    strongly_connected: Optional[bool] = None
    provenance: Provenance

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True)

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.model_validate_json(text)


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def path_witness(graph: BidirectedGraph, walk: Walk) -> PathWitness:
    signs = [
        (graph.sign(o.tail, o.edge).value, graph.sign(o.head, o.edge).value)
        for o in walk.oriented_edges
    ]
    return PathWitness(sequence=walk.sequence(), signs=signs)


def witnesses(graph: BidirectedGraph, walks: Sequence[Walk]) -> List[PathWitness]:
    return [path_witness(graph, w) for w in walks]


def make_certificate(
    graph: BidirectedGraph,
    query: Query,
    outcome: Outcome,
    algorithm: str,
    paths: Sequence[Walk] = (),
    separator: Optional[Sequence[str]] = None,
    depth: int = 0,
    timings: Optional[Dict[str, float]] = None,
    **extra,
) -> Certificate:
    """Assemble a certificate; separators and extra id lists are sorted."""
    return Certificate(
        query=query,
        outcome=outcome,
        paths=witnesses(graph, paths),
        separator=None if separator is None else sorted(separator),
        provenance=Provenance(algorithm=algorithm, depth=depth, timings=timings),
        **extra,
    )


def edge_menger_certificate(graph, x, y, prescribed, outcome, timings=None) -> Certificate:
    """Certificate for an :class:`~bidimenger.analysis.menger_edge.EdgeMengerOutcome`."""
    query = Query(command="menger-edge", x=x, y=y, prescribed=witnesses(graph, prescribed))
    kind = Outcome(outcome.kind.value)
    return make_certificate(
        graph,
        query,
        kind,
        "edge_menger",
        paths=outcome.paths,
        separator=outcome.separator if kind is Outcome.SEPARATOR else None,
        depth=outcome.depth,
        timings=timings,
    )


def vertex_menger_certificate(
    graph, x_set, y_set, prescribed, outcome, timings=None
) -> Certificate:
    """Certificate for a :class:`~bidimenger.analysis.menger_vertex.VertexMengerOutcome`."""
    query = Query(
        command="menger-vertex", x_set=x_set, y_set=y_set, prescribed=witnesses(graph, prescribed)
    )
    kind = Outcome(outcome.kind.value)
    return make_certificate(
        graph,
        query,
        kind,
        "vertex_menger",
        paths=outcome.paths,
        separator=outcome.separator if kind is Outcome.SEPARATOR else None,
        depth=outcome.depth,
        timings=timings,
    )


def signed_path_certificate(
    graph: BidirectedGraph,
    source: SignedVertex,
    target: SignedVertex,
    found: Optional[Walk],
    trail: bool = False,
) -> Certificate:
    query = Query(
        command="trail" if trail else "paths",
        source=format_signed_vertex(source),
        target=format_signed_vertex(target),
    )
    return make_certificate(
        graph,
        query,
        Outcome.ABSENT if found is None else Outcome.FOUND,
        "find_signed_trail" if trail else "find_signed_path",
        paths=() if found is None else (found,),
    )


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    """``valid`` is False as soon as one problem is recorded; ``skipped`` lists
    negative claims too large for the exhaustive oracles."""

    problems: List[str] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.problems

    def fail(self, message: str) -> None:
        self.problems.append(message)


def _walk(graph: BidirectedGraph, witness: PathWitness, result: CheckResult) -> Optional[Walk]:
    """The walk of a witness if its ids exist, it alternates, and its signs are right."""
    try:
        walk = Walk.from_sequence(witness.sequence)
        cls = classify_walk(graph, walk)
    except StructureError as e:
        result.fail(f"Witness {' '.join(witness.sequence)}: {e}")
        return None
    if cls is WalkClass.INVALID:
        result.fail(f"Witness {walk} is not an alternating walk")
        return None
    expected = [
        (graph.sign(o.tail, o.edge).value, graph.sign(o.head, o.edge).value)
        for o in walk.oriented_edges
    ]
    if [tuple(s) for s in witness.signs] != expected:
        result.fail(f"Witness {walk} lists signs {witness.signs}, graph has {expected}")
        return None
    return walk


def _walks(graph, items: Sequence[PathWitness], result: CheckResult) -> Optional[List[Walk]]:
    walks = [_walk(graph, w, result) for w in items]
    if any(w is None for w in walks):
        return None
    return walks  # type: ignore[return-value]


def _require(result: CheckResult, condition: bool, message: str) -> None:
    if not condition:
        result.fail(message)


def _require_exhaustive(
    result: CheckResult, claim: str, search: Callable[[], bool], message: str
) -> None:
    """Like :func:`_require` for an oracle search; oversized searches are skipped."""
    try:
        holds = search()
    except BoundExceededError as e:
        result.skipped.append(f"{claim}: {e}")
        return
    _require(result, holds, message)


def _check_signed_query(graph, cert: Certificate, result: CheckResult, trail: bool) -> None:
    source = parse_signed_vertex(cert.query.source or "")
    target = parse_signed_vertex(cert.query.target or "")
    graph.check_signed_set([source, target])
    if cert.outcome is Outcome.ABSENT:
        _require_exhaustive(
            result,
            "absent " + ("trail" if trail else "path"),
            lambda: brute_signed_path(graph, source, target, trails=trail) is None,
            f"Exhaustive search finds a {source}–{target} {'trail' if trail else 'path'}",
        )
        return
    walks = _walks(graph, cert.paths, result)
    if walks is None:
        return
    if len(walks) != 1:
        result.fail(f"Expected one witness, got {len(walks)}")
        return
    w = walks[0]
    _require(result, is_trail(graph, w) if trail else is_path(graph, w), f"{w} has the wrong class")
    _require(result, signed_start(graph, w) == source, f"{w} does not start in {source}")
    _require(result, signed_end(graph, w) == target, f"{w} does not end in {target}")


def _check_set_paths_query(doc: GraphDocument, cert: Certificate, result: CheckResult) -> None:
    graph = doc.graph
    xs, ys = doc.signed_set(cert.query.x_set or ""), doc.signed_set(cert.query.y_set or "")
    if cert.outcome is Outcome.ABSENT:
        _require_exhaustive(
            result,
            "absent 𝒳–𝒴 path",
            lambda: not has_set_path_avoiding(graph, xs, ys),
            "Exhaustive search finds an 𝒳–𝒴 path",
        )
        return
    walks = _walks(graph, cert.paths, result)
    if walks is None:
        return
    _require(result, len(walks) == 1, f"Expected one witness, got {len(walks)}")
    for w in walks:
        _require(result, is_set_path(graph, xs, ys, w), f"{w} is not an 𝒳–𝒴 path")


def _check_clean(doc: GraphDocument, cert: Certificate, result: CheckResult) -> None:
    graph = doc.graph
    xs = doc.signed_set(cert.query.x_set or "")
    if cert.outcome is Outcome.TRUE:
        _require_exhaustive(
            result,
            "cleanness",
            lambda: brute_is_clean(graph, xs),
            "Exhaustive search finds a path between members of 𝒳",
        )
        return
    walks = _walks(graph, cert.paths, result)
    if not walks:
        result.fail("A 'false' answer needs a witness path")
        return
    w = walks[0]
    _require(result, not w.is_trivial and is_path(graph, w), f"{w} is not a nontrivial path")
    if not w.is_trivial:
        _require(
            result,
            signed_start(graph, w) in xs and signed_end(graph, w) in xs,
            f"{w} does not start and end in 𝒳",
        )


def _check_edge_clean(doc: GraphDocument, cert: Certificate, result: CheckResult) -> None:
    graph = doc.graph
    x = cert.query.x or ""
    graph.require_vertex(x)
    if cert.outcome is Outcome.TRUE:
        _require_exhaustive(
            result,
            "edge-cleanness",
            lambda: brute_is_edge_clean(graph, x),
            f"Exhaustive search finds a closed trail at {x!r}",
        )
        return
    walks = _walks(graph, cert.paths, result)
    if not walks:
        result.fail("A 'false' answer needs a witness trail")
        return
    w = walks[0]
    _require(
        result,
        not w.is_trivial and w.start == x and w.end == x and is_trail(graph, w),
        f"{w} is not a nontrivial closed trail at {x!r}",
    )


def _brute_strongly_connected(graph: BidirectedGraph) -> bool:
    vertices = graph.vertices
    for i, v in enumerate(vertices):
        for w in vertices[i + 1 :]:
            if not any(
                brute_signed_path(graph, SignedVertex(v, a), SignedVertex(w, b)) is not None
                and brute_signed_path(graph, SignedVertex(v, -a), SignedVertex(w, -b)) is not None
                for a in SIGNS
                for b in SIGNS
            ):
                return False
    return True


def _check_connectivity(doc: GraphDocument, cert: Certificate, result: CheckResult) -> None:
    graph = doc.graph
    claimed = set(cert.edges or [])
    cycles = _walks(graph, cert.paths, result)
    if cycles is None:
        return
    covered = set()
    for c in cycles:
        if classify_walk(graph, c) is not WalkClass.CYCLE:
            result.fail(f"{c} is not a cycle")
        covered |= c.edge_set()
    _require(result, claimed <= covered, f"No witness cycle for {sorted(claimed - covered)}")
    for e in graph.edges:
        if e.id in claimed:
            continue
        back_from, back_to = SignedVertex(e.v, -e.sign_v), SignedVertex(e.u, -e.sign_u)
        _require_exhaustive(
            result,
            f"edge {e.id!r} off every cycle",
            lambda: brute_signed_path(graph.without_edges([e.id]), back_from, back_to) is None,
            f"Edge {e.id!r} lies on a cycle but is not listed",
        )
    # components of the claimed cycle edges
    n = graph.num_vertices()
    components: List[List[str]] = []
    if n:
        index = {v: i for i, v in enumerate(graph.vertices)}
        ends = [graph.edge(e).endpoints for e in sorted(claimed) if graph.has_edge(e)]
        rows = np.array([index[u] for u, _ in ends], dtype=int)
        cols = np.array([index[v] for _, v in ends], dtype=int)
        _, labels = connected_components(
            coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n)), directed=False
        )
        groups: Dict[int, List[str]] = {}
        for v, label in zip(graph.vertices, labels):
            groups.setdefault(int(label), []).append(v)
        components = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
    _require(result, (cert.components or []) == components, "Listed components do not match the cycle edges")
    circular = len(components) <= 1
    _require(
        result,
        (cert.outcome is Outcome.TRUE) == circular,
        f"Outcome {cert.outcome.value} but the graph is {'' if circular else 'not '}circularly connected",
    )
    if cert.strongly_connected is not None:
        _require_exhaustive(
            result,
            "strong connectivity",
            lambda: cert.strongly_connected == _brute_strongly_connected(graph),
            "Strong connectivity claim is wrong",
        )


def _check_appendage(doc: GraphDocument, cert: Certificate, result: CheckResult) -> None:
    graph = doc.graph
    anchor = cert.query.x or ""
    bases = _walks(graph, cert.query.prescribed, result)
    if not bases or len(bases) != 1:
        result.fail("An appendage query names exactly one path")
        return
    path = bases[0]
    edges = frozenset(cert.edges or [])
    for e in edges:
        if not graph.has_edge(e):
            result.fail(f"Unknown edge {e!r}")
            return
    _require(result, brute_admissible(graph, edges, path, anchor), "Listed edges are not admissible")
    try:
        maximal = brute_appendage(graph, path, anchor)
    except BoundExceededError as e:
        result.skipped.append(f"appendage maximality: {e}")
        return
    _require(result, maximal == edges, f"Largest admissible set is {sorted(maximal)}")


def _check_menger_edge(doc: GraphDocument, cert: Certificate, result: CheckResult) -> None:
    graph = doc.graph
    x, y = cert.query.x or "", cert.query.y or ""
    graph.require_vertex(x)
    graph.require_vertex(y)
    given = _walks(graph, cert.query.prescribed, result)
    if given is None:
        return
    k = len(given)
    if cert.outcome is Outcome.SEPARATOR:
        separator = cert.separator or []
        _require(result, len(set(separator)) == k, f"Separator {separator} does not have {k} edges")
        for e in separator:
            if not graph.has_edge(e):
                result.fail(f"Unknown edge {e!r}")
                return
        _require_exhaustive(
            result,
            "edge separator",
            lambda: not has_path_avoiding(graph, x, y, separator),
            f"Exhaustive search finds an {x}–{y} path avoiding {separator}",
        )
        return
    walks = _walks(graph, cert.paths, result)
    if walks is None:
        return
    _require(result, len(walks) == k + 1, f"Expected {k + 1} paths, got {len(walks)}")
    for w in walks:
        _require(
            result,
            not w.is_trivial and w.start == x and w.end == y and is_path(graph, w),
            f"{w} is not an {x}–{y} path",
        )
    _require(result, pairwise_edge_disjoint(walks), "Paths share an edge")
    for g, w in zip(given, walks):
        if g.edges and w.edges:
            _require(result, g.edges[0] == w.edges[0], f"First edge {g.edges[0]!r} not preserved")


def _check_menger_vertex(doc: GraphDocument, cert: Certificate, result: CheckResult) -> None:
    graph = doc.graph
    xs, ys = doc.signed_set(cert.query.x_set or ""), doc.signed_set(cert.query.y_set or "")
    given = _walks(graph, cert.query.prescribed, result)
    if given is None:
        return
    k = len(given)
    if cert.outcome is Outcome.SEPARATOR:
        separator = cert.separator or []
        _require(result, len(set(separator)) == k, f"Separator {separator} does not have {k} vertices")
        for v in separator:
            if not graph.has_vertex(v):
                result.fail(f"Unknown vertex {v!r}")
                return
        _require_exhaustive(
            result,
            "vertex separator",
            lambda: not has_set_path_avoiding(graph, xs, ys, separator),
            f"Exhaustive search finds an 𝒳–𝒴 path avoiding {separator}",
        )
        return
    walks = _walks(graph, cert.paths, result)
    if walks is None:
        return
    _require(result, len(walks) == k + 1, f"Expected {k + 1} paths, got {len(walks)}")
    for w in walks:
        _require(result, is_set_path(graph, xs, ys, w), f"{w} is not an 𝒳–𝒴 path")
    _require(result, pairwise_vertex_disjoint(walks), "Paths share a vertex")
    for g, w in zip(given, walks):
        _require(result, g.start == w.start, f"Path from {g.start!r} now starts at {w.start!r}")


def check_certificate(doc: GraphDocument, cert: Certificate) -> CheckResult:
    """Re-verify every claim of ``cert`` against ``doc``."""
    result = CheckResult()
    command = cert.query.command
    try:
        if command in ("paths", "trail"):
            if cert.query.x_set is not None:
                _check_set_paths_query(doc, cert, result)
            else:
                _check_signed_query(doc.graph, cert, result, trail=command == "trail")
        elif command == "clean":
            _check_clean(doc, cert, result)
        elif command == "edge-clean":
            _check_edge_clean(doc, cert, result)
        elif command == "connectivity":
            _check_connectivity(doc, cert, result)
        elif command == "appendage":
            _check_appendage(doc, cert, result)
        elif command == "menger-edge":
            _check_menger_edge(doc, cert, result)
        elif command == "menger-vertex":
            _check_menger_vertex(doc, cert, result)
        else:
            result.fail(f"No checker for command {command!r}")
    except (StructureError, ValueError) as e:
        result.fail(str(e))
    logger.debug(f"check_certificate[{command}]: {len(result.problems)} problems")
    return result
