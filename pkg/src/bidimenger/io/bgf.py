"""The ``bgf 1`` text format for bidirected graphs, named signed sets and named walks.

A document is a header line followed by one record per line::

    bgf 1
    # comment
    v <id>
    e <id> <u> <+|-> <v> <+|->
    set <name> <vertex>:<+|-> ...
    path <name> <v0> <e1> <v1> ...

Tokens are separated by whitespace. A record may only refer to vertices and edges
declared on earlier lines. Serialisation is canonical: vertices, edges and sets in
sorted order, set members sorted, paths in document order.
"""

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Set, Tuple

from ..errors import ContractError, ParseError
from ..graph.core import BidirectedGraph, Edge, Sign, SignedVertex, SignedVertexSet, Walk
from ..sanitize import is_identifier, validate_identifier

logger = logging.getLogger(__name__)

BGF_HEADER = "bgf 1"

_TOKEN = re.compile(r"\S+")


@dataclass(frozen=True)
class GraphDocument:
    """A graph with its named signed sets and named walks."""

    graph: BidirectedGraph
    sets: Dict[str, SignedVertexSet] = field(default_factory=dict)
    paths: Dict[str, Walk] = field(default_factory=dict)

    def signed_set(self, name: str) -> SignedVertexSet:
        if name not in self.sets:
            raise ContractError(f"Unknown set {name!r}; document defines {sorted(self.sets)}")
        return self.sets[name]

    def path_list(self) -> List[Walk]:
        return list(self.paths.values())

    def with_paths(self, paths: Iterable[Walk], prefix: str = "P") -> "GraphDocument":
        named = {f"{prefix}{i}": p for i, p in enumerate(paths, start=1)}
        return GraphDocument(self.graph, dict(self.sets), named)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class _Reader:
    """Accumulates records while tracking what has been declared."""

    def __init__(self) -> None:
        self.vertices: List[str] = []
        self.vertex_set: Set[str] = set()
        self.edges: Dict[str, Edge] = {}
        self.signatures: Dict[frozenset, Tuple[str, int]] = {}
        self.sets: Dict[str, SignedVertexSet] = {}
        self.paths: Dict[str, Walk] = {}

    def _ident(self, token: str, column: int, line: int, what: str) -> str:
        if not is_identifier(token):
            raise ParseError(f"Invalid {what} {token!r}", line, column)
        return token

    def _vertex_ref(self, token: str, column: int, line: int) -> str:
        if token not in self.vertex_set:
            raise ParseError(f"Unknown vertex {token!r}", line, column)
        return token

    def _sign(self, token: str, column: int, line: int) -> Sign:
        try:
            return Sign.parse(token)
        except ValueError as e:
            raise ParseError(str(e), line, column) from e

    def vertex(self, tokens: List[Tuple[str, int]], line: int) -> None:
        if len(tokens) != 2:
            raise ParseError("Vertex record is 'v <id>'", line, tokens[0][1])
        (vid, col) = tokens[1]
        self._ident(vid, col, line, "vertex id")
        if vid in self.vertex_set:
            raise ParseError(f"Duplicate vertex id {vid!r}", line, col)
        self.vertices.append(vid)
        self.vertex_set.add(vid)

    def edge(self, tokens: List[Tuple[str, int]], line: int) -> None:
        if len(tokens) != 6:
            raise ParseError("Edge record is 'e <id> <u> <+|-> <v> <+|->'", line, tokens[0][1])
        (eid, ecol), (u, ucol), (su, sucol), (v, vcol), (sv, svcol) = tokens[1:]
        self._ident(eid, ecol, line, "edge id")
        if eid in self.edges:
            raise ParseError(f"Duplicate edge id {eid!r}", line, ecol)
        self._vertex_ref(u, ucol, line)
        self._vertex_ref(v, vcol, line)
        if u == v:
            raise ParseError(f"Edge {eid!r} is a loop at {u!r}", line, ecol)
        edge = Edge(eid, u, v, self._sign(su, sucol, line), self._sign(sv, svcol, line))
        if edge.signature in self.signatures:
            other, other_line = self.signatures[edge.signature]
            raise ParseError(
                f"Edge {eid!r} repeats the endpoints and signs of {other!r} (line {other_line})",
                line,
                ecol,
            )
        self.signatures[edge.signature] = (eid, line)
        self.edges[eid] = edge

    def signed_set(self, tokens: List[Tuple[str, int]], line: int) -> None:
        if len(tokens) < 2:
            raise ParseError("Set record is 'set <name> <vertex>:<sign> ...'", line, tokens[0][1])
        name, ncol = tokens[1]
        self._ident(name, ncol, line, "set name")
        if name in self.sets:
            raise ParseError(f"Duplicate set name {name!r}", line, ncol)
        members = set()
        for token, col in tokens[2:]:
            vertex, sep, sign = token.rpartition(":")
            if not sep or not vertex:
                raise ParseError(f"Set member {token!r} is not '<vertex>:<sign>'", line, col)
            self._vertex_ref(vertex, col, line)
            member = SignedVertex(vertex, self._sign(sign, col + len(vertex) + 1, line))
            if member in members:
                raise ParseError(f"Set member {token!r} listed twice", line, col)
            members.add(member)
        self.sets[name] = frozenset(members)

    def path(self, tokens: List[Tuple[str, int]], line: int) -> None:
        if len(tokens) < 3 or len(tokens) % 2 == 0:
            raise ParseError(
                "Path record is 'path <name> <v0> <e1> <v1> ...' ending at a vertex",
                line,
                tokens[0][1],
            )
        name, ncol = tokens[1]
        self._ident(name, ncol, line, "path name")
        if name in self.paths:
            raise ParseError(f"Duplicate path name {name!r}", line, ncol)
        items = tokens[2:]
        for (token, col) in items[0::2]:
            self._vertex_ref(token, col, line)
        for pos in range(1, len(items), 2):
            eid, col = items[pos]
            if eid not in self.edges:
                raise ParseError(f"Unknown edge {eid!r}", line, col)
            ends = {items[pos - 1][0], items[pos + 1][0]}
            if set(self.edges[eid].endpoints) != ends:
                raise ParseError(f"Edge {eid!r} does not join {' and '.join(sorted(ends))}", line, col)
        self.paths[name] = Walk.from_sequence(t for t, _ in items)

    def document(self) -> GraphDocument:
        graph = BidirectedGraph(self.vertices, self.edges.values(), strict=True)
        return GraphDocument(graph, self.sets, self.paths)


def parse(text: str) -> GraphDocument:
    """Parse a ``bgf 1`` document.

    Raises ParseError with the line and column of the first offending token.
    """
    reader = _Reader()
    seen_header = False
    handlers = {
        "v": reader.vertex,
        "e": reader.edge,
        "set": reader.signed_set,
        "path": reader.path,
    }
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(raw)]
        if not tokens or tokens[0][0].startswith("#"):
            continue
        if not seen_header:
            if [t for t, _ in tokens] != BGF_HEADER.split():
                raise ParseError(f"Expected header {BGF_HEADER!r}", number, tokens[0][1])
            seen_header = True
            continue
        keyword, column = tokens[0]
        handler = handlers.get(keyword)
        if handler is None:
            raise ParseError(f"Unknown record {keyword!r}", number, column)
        handler(tokens, number)
    if not seen_header:
        raise ParseError(f"Missing header {BGF_HEADER!r}", 1)
    doc = reader.document()
    logger.debug(
        f"Parsed bgf document: {doc.graph.num_vertices()} vertices, "
        f"{doc.graph.num_edges()} edges, {len(doc.sets)} sets, {len(doc.paths)} paths"
    )
    return doc


# ---------------------------------------------------------------------------
# Serialisation
# ---------------------------------------------------------------------------


def _member(member: SignedVertex) -> str:
    return f"{member.vertex}:{member.sign.value}"


def serialize(doc: GraphDocument) -> str:
    """Canonical text of ``doc``; ``parse(serialize(doc))`` reproduces it exactly."""
    graph = doc.graph
    lines = [BGF_HEADER]
    for v in graph.vertices:
        lines.append(f"v {validate_identifier(v, 'vertex id')}")
    for e in graph.edges:
        validate_identifier(e.id, "edge id")
        lines.append(f"e {e.id} {e.u} {e.sign_u.value} {e.v} {e.sign_v.value}")
    for name in sorted(doc.sets):
        members = " ".join(_member(m) for m in sorted(doc.sets[name]))
        lines.append(f"set {validate_identifier(name, 'set name')} {members}".rstrip())
    for name, walk in doc.paths.items():
        lines.append(f"path {validate_identifier(name, 'path name')} {walk}")
    return "\n".join(lines) + "\n"


def canonical(text: str) -> str:
    return serialize(parse(text))


def document(
    graph: BidirectedGraph,
    sets: Optional[Dict[str, SignedVertexSet]] = None,
    paths: Optional[Iterable[Walk]] = None,
) -> GraphDocument:
    """Wrap a graph; unnamed paths are called P1, P2, ..."""
    doc = GraphDocument(graph, dict(sets or {}))
    return doc.with_paths(paths) if paths else doc


def read_document(path: Path) -> GraphDocument:
    return parse(Path(path).read_text())


def write_document(doc: GraphDocument, path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize(doc))


def parse_signed_vertex(token: str) -> SignedVertex:
    """``v:+`` → SignedVertex("v", +); the vertex part may itself contain ``:``."""
    vertex, sep, sign = token.rpartition(":")
    if not sep or not vertex:
        raise ContractError(f"Expected '<vertex>:<sign>', got {token!r}")
    try:
        return SignedVertex(vertex, Sign.parse(sign))
    except ValueError as e:
        raise ContractError(str(e)) from e


def format_signed_vertex(member: SignedVertex) -> str:
    return _member(member)
