"""Sign normalisation, subdivision and the embedding of directed graphs."""

from dataclasses import dataclass, field
from typing import Dict, Tuple

from ..errors import StructureError
from .core import BidirectedGraph, Edge, Sign, fresh_id


@dataclass(frozen=True)
class Digraph:
    """A loop-free directed multigraph with arcs given as ``(id, tail, head)``."""

    vertices: Tuple[str, ...]
    arcs: Tuple[Tuple[str, str, str], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs)))
        known = set(self.vertices)
        ids = set()
        for arc_id, tail, head in self.arcs:
            if arc_id in ids:
                raise StructureError(f"Duplicate arc id {arc_id!r}")
            ids.add(arc_id)
            if tail == head:
                raise StructureError(f"Arc {arc_id!r} is a loop at {tail!r}")
            if tail not in known or head not in known:
                raise StructureError(f"Arc {arc_id!r} uses an undeclared vertex")

    def without_arcs_into(self, vertex: str) -> "Digraph":
        return Digraph(self.vertices, tuple(a for a in self.arcs if a[2] != vertex))

    def successors(self, vertex: str) -> Tuple[Tuple[str, str], ...]:
        return tuple((arc_id, head) for arc_id, tail, head in self.arcs if tail == vertex)


def embed_directed(digraph: Digraph) -> BidirectedGraph:
    """Each arc x→y becomes an edge with sign − at x and + at y."""
    return BidirectedGraph(
        digraph.vertices,
        (Edge(arc_id, tail, head, Sign.MINUS, Sign.PLUS) for arc_id, tail, head in digraph.arcs),
    )


def flip_signs_at_vertex(graph: BidirectedGraph, vertex: str) -> BidirectedGraph:
    """Negate the sign of every half-edge at ``vertex``."""
    return graph.with_replaced_edges(
        e.with_sign(vertex, -e.sign_at(vertex)) for e in graph.incident(vertex)
    )


def set_signs_at_vertex(graph: BidirectedGraph, vertex: str, sign: Sign) -> BidirectedGraph:
    """Give every half-edge at ``vertex`` the sign ``sign``."""
    return graph.with_replaced_edges(
        e.with_sign(vertex, sign) for e in graph.incident(vertex) if e.sign_at(vertex) != sign
    )


def subdivide_parallels(graph: BidirectedGraph) -> Tuple[BidirectedGraph, Dict[str, str]]:
    """Replace every edge uv by u–m–v through a fresh vertex m.

    The outer half-edges keep their signs, the two half-edges at m get + (towards u)
    and − (towards v), so walks through m always alternate. Returns the subdivided
    graph and a map from each new edge id to the edge it came from.
    """
    taken = set(graph.vertices) | set(graph.edge_ids)
    vertices = list(graph.vertices)
    edges = []
    provenance: Dict[str, str] = {}
    for edge in graph.edges:
        mid = fresh_id(taken, f"{edge.id}.mid")
        taken.add(mid)
        first = fresh_id(taken, f"{edge.id}.0")
        taken.add(first)
        second = fresh_id(taken, f"{edge.id}.1")
        taken.add(second)
        vertices.append(mid)
        edges.append(Edge(first, edge.u, mid, edge.sign_u, Sign.PLUS))
        edges.append(Edge(second, mid, edge.v, Sign.MINUS, edge.sign_v))
        provenance[first] = edge.id
        provenance[second] = edge.id
    return BidirectedGraph(vertices, edges, strict=True), provenance

