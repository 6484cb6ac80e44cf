"""Data model for bidirected graphs.

A bidirected graph is an undirected multigraph in which every half-edge (a pair of
a vertex and an incident edge) carries a sign. Identifiers are opaque strings and
every collection exposed here is ordered lexicographically so that all downstream
output is reproducible.
"""

from dataclasses import dataclass
from enum import Enum
from typing import (
    Container,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Set,
    Tuple,
)

from ..errors import StructureError


class Sign(str, Enum):
    """Sign of a half-edge."""

    PLUS = "+"
    MINUS = "-"

    def __neg__(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, token: str) -> "Sign":
        if token == "+":
            return cls.PLUS
        if token == "-":
            return cls.MINUS
        raise ValueError(f"Invalid sign {token!r}; expected '+' or '-'")


SIGNS: Tuple[Sign, Sign] = (Sign.PLUS, Sign.MINUS)


class SignedVertex(NamedTuple):
    """A vertex together with the sign a walk starts or ends with there."""

    vertex: str
    sign: Sign

    def __neg__(self) -> "SignedVertex":
        return SignedVertex(self.vertex, -self.sign)

    def __str__(self) -> str:
        return f"{self.vertex}:{self.sign.value}"


SignedVertexSet = FrozenSet[SignedVertex]


def signed_set(members: Iterable[Tuple[str, Sign]]) -> SignedVertexSet:
    """Build a SignedVertexSet from (vertex, sign) pairs."""
    return frozenset(SignedVertex(v, Sign(s)) for v, s in members)


def vertices_of(members: Iterable[SignedVertex]) -> FrozenSet[str]:
    """V(𝒳): the underlying vertices of a signed vertex set."""
    return frozenset(m.vertex for m in members)


class OrientedEdge(NamedTuple):
    """An edge traversed from ``tail`` to ``head``."""

    edge: str
    tail: str
    head: str

    def reversed(self) -> "OrientedEdge":
        return OrientedEdge(self.edge, self.head, self.tail)


@dataclass(frozen=True)
class Edge:
    """An edge record with the sign of each of its two half-edges."""

    id: str
    u: str
    v: str
    sign_u: Sign
    sign_v: Sign

    def sign_at(self, vertex: str) -> Sign:
        if vertex == self.u:
            return self.sign_u
        if vertex == self.v:
            return self.sign_v
        raise StructureError(f"Vertex {vertex!r} is not an endpoint of edge {self.id!r}")

    def other(self, vertex: str) -> str:
        if vertex == self.u:
            return self.v
        if vertex == self.v:
            return self.u
        raise StructureError(f"Vertex {vertex!r} is not an endpoint of edge {self.id!r}")

    @property
    def endpoints(self) -> Tuple[str, str]:
        return (self.u, self.v)

    @property
    def signature(self) -> FrozenSet[Tuple[str, Sign]]:
        """Endpoints with their signs; two edges with equal signatures are duplicates."""
        return frozenset({(self.u, self.sign_u), (self.v, self.sign_v)})

    def with_sign(self, vertex: str, sign: Sign) -> "Edge":
        if vertex == self.u:
            return Edge(self.id, self.u, self.v, sign, self.sign_v)
        if vertex == self.v:
            return Edge(self.id, self.u, self.v, self.sign_u, sign)
        raise StructureError(f"Vertex {vertex!r} is not an endpoint of edge {self.id!r}")

    def orientation_from(self, tail: str) -> OrientedEdge:
        return OrientedEdge(self.id, tail, self.other(tail))


class BidirectedGraph:
    """Immutable bidirected graph.

    Loops, undeclared endpoints and duplicate ids are always rejected. With
    ``strict=True`` two distinct edges sharing both endpoints and both signs are
    rejected too; auxiliary graphs built by the algorithms are allowed to carry
    such duplicates.
    """

    __slots__ = ("_vertices", "_edges", "_incidence")

    def __init__(
        self,
        vertices: Iterable[str] = (),
        edges: Iterable[Edge] = (),
        *,
        strict: bool = False,
    ):
        vertex_set: Set[str] = set(vertices)
        edge_map: Dict[str, Edge] = {}
        incidence: Dict[str, List[str]] = {v: [] for v in vertex_set}
        for edge in edges:
            if edge.id in edge_map:
                raise StructureError(f"Duplicate edge id {edge.id!r}")
            if edge.u == edge.v:
                raise StructureError(f"Edge {edge.id!r} is a loop at {edge.u!r}")
            for end in edge.endpoints:
                if end not in vertex_set:
                    raise StructureError(
                        f"Edge {edge.id!r} uses undeclared vertex {end!r}"
                    )
            edge_map[edge.id] = edge
            incidence[edge.u].append(edge.id)
            incidence[edge.v].append(edge.id)

        self._vertices: Tuple[str, ...] = tuple(sorted(vertex_set))
        self._edges: Dict[str, Edge] = {k: edge_map[k] for k in sorted(edge_map)}
        self._incidence: Dict[str, Tuple[str, ...]] = {
            v: tuple(sorted(ids)) for v, ids in incidence.items()
        }
        if strict:
            duplicates = self.duplicate_signatures()
            if duplicates:
                a, b = duplicates[0]
                raise StructureError(f"Edges {a!r} and {b!r} share endpoints and signs")

    # -- accessors -------------------------------------------------------------

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(self._edges.values())

    @property
    def edge_ids(self) -> Tuple[str, ...]:
        return tuple(self._edges)

    def num_vertices(self) -> int:
        return len(self._vertices)

    def num_edges(self) -> int:
        return len(self._edges)

    def has_vertex(self, vertex: str) -> bool:
        return vertex in self._incidence

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._edges

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edges[edge_id]
        except KeyError:
            raise StructureError(f"Unknown edge {edge_id!r}") from None

    def require_vertex(self, vertex: str) -> None:
        if vertex not in self._incidence:
            raise StructureError(f"Unknown vertex {vertex!r}")

    def incident(self, vertex: str) -> Tuple[Edge, ...]:
        self.require_vertex(vertex)
        return tuple(self._edges[e] for e in self._incidence[vertex])

    def degree(self, vertex: str) -> int:
        self.require_vertex(vertex)
        return len(self._incidence[vertex])

    def sign(self, vertex: str, edge_id: str) -> Sign:
        """σ(v, e)."""
        return self.edge(edge_id).sign_at(vertex)

    def edges_between(self, u: str, v: str) -> Tuple[Edge, ...]:
        return tuple(e for e in self.incident(u) if e.other(u) == v)

    def orientations(self, edge_id: str) -> Tuple[OrientedEdge, OrientedEdge]:
        edge = self.edge(edge_id)
        return (OrientedEdge(edge.id, edge.u, edge.v), OrientedEdge(edge.id, edge.v, edge.u))

    def duplicate_signatures(self) -> List[Tuple[str, str]]:
        seen: Dict[FrozenSet[Tuple[str, Sign]], str] = {}
        duplicates = []
        for edge in self._edges.values():
            key = edge.signature
            if key in seen:
                duplicates.append((seen[key], edge.id))
            else:
                seen[key] = edge.id
        return duplicates

    def check_signed_set(self, members: Iterable[SignedVertex]) -> None:
        for member in members:
            if member.vertex not in self._incidence:
                raise StructureError(f"Signed vertex {member} references an unknown vertex")

    # -- derived graphs ----------------------------------------------------------

    def without_edges(self, edge_ids: Iterable[str]) -> "BidirectedGraph":
        """B − F; ids not present in the graph are ignored."""
        drop = set(edge_ids)
        if not drop:
            return self
        return BidirectedGraph(
            self._vertices, (e for k, e in self._edges.items() if k not in drop)
        )

    def without_vertices(self, vertices: Iterable[str]) -> "BidirectedGraph":
        drop = set(vertices)
        return BidirectedGraph(
            (v for v in self._vertices if v not in drop),
            (e for e in self._edges.values() if e.u not in drop and e.v not in drop),
        )

    def restrict_edges(self, edge_ids: Iterable[str]) -> "BidirectedGraph":
        """Spanning subgraph keeping only the given edges."""
        keep = set(edge_ids)
        return BidirectedGraph(self._vertices, (e for k, e in self._edges.items() if k in keep))

    def with_additions(
        self, vertices: Iterable[str] = (), edges: Iterable[Edge] = ()
    ) -> "BidirectedGraph":
        return BidirectedGraph(
            list(self._vertices) + list(vertices), list(self._edges.values()) + list(edges)
        )

    def with_replaced_edges(self, edges: Iterable[Edge]) -> "BidirectedGraph":
        """Replace edge records by id, keeping every vertex."""
        updated = dict(self._edges)
        for edge in edges:
            if edge.id not in updated:
                raise StructureError(f"Unknown edge {edge.id!r}")
            updated[edge.id] = edge
        return BidirectedGraph(self._vertices, updated.values())

    # -- dunder ------------------------------------------------------------------

    def __iter__(self) -> Iterator[str]:
        return iter(self._vertices)

    def __contains__(self, vertex: object) -> bool:
        return vertex in self._incidence

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BidirectedGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, tuple(self._edges.values())))

    def __repr__(self) -> str:
        return f"BidirectedGraph(|V|={len(self._vertices)}, |E|={len(self._edges)})"


def make_graph(
    vertices: Iterable[str],
    edges: Iterable[Tuple[str, str, str, str, str]],
    *,
    strict: bool = True,
) -> BidirectedGraph:
    """Build a graph from ``(id, u, sign_u, v, sign_v)`` tuples with sign strings."""
    return BidirectedGraph(
        vertices,
        (Edge(eid, u, v, Sign.parse(su), Sign.parse(sv)) for eid, u, su, v, sv in edges),
        strict=strict,
    )


def fresh_id(taken: Container[str], stem: str) -> str:
    """Return ``stem`` or the first ``stem#n`` not in ``taken``."""
    if stem not in taken:
        return stem
    n = 1
    while f"{stem}#{n}" in taken:
        n += 1
    return f"{stem}#{n}"


class WalkClass(str, Enum):
    """Strongest class a candidate walk belongs to."""

    INVALID = "invalid"
    WALK = "walk"
    TRAIL = "trail"
    PATH = "path"
    CYCLE = "cycle"


@dataclass(frozen=True)
class Walk:
    """Vertex sequence v₀…v_ℓ with the edge ids traversed between them.

    The oriented edge at position j runs from ``vertices[j]`` to ``vertices[j+1]``;
    parallel edges are told apart by id. Validity against a graph is decided by
    :func:`bidimenger.graph.walks.classify_walk`.
    """

    vertices: Tuple[str, ...]
    edges: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(self.vertices) != len(self.edges) + 1:
            raise StructureError(
                f"Walk needs one more vertex than edges, got {len(self.vertices)} "
                f"vertices and {len(self.edges)} edges"
            )

    @classmethod
    def trivial(cls, vertex: str) -> "Walk":
        return cls((vertex,), ())

    @classmethod
    def from_sequence(cls, items: Iterable[str]) -> "Walk":
        """Parse ``v0 e1 v1 e2 v2 ...``."""
        seq = list(items)
        if len(seq) % 2 == 0:
            raise StructureError("A walk sequence alternates vertices and edges and has odd length")
        return cls(tuple(seq[0::2]), tuple(seq[1::2]))

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_trivial(self) -> bool:
        return not self.edges

    @property
    def start(self) -> str:
        return self.vertices[0]

    @property
    def end(self) -> str:
        return self.vertices[-1]

    @property
    def oriented_edges(self) -> Tuple[OrientedEdge, ...]:
        return tuple(
            OrientedEdge(e, self.vertices[j], self.vertices[j + 1])
            for j, e in enumerate(self.edges)
        )

    @property
    def internal_vertices(self) -> Tuple[str, ...]:
        return self.vertices[1:-1]

    def edge_set(self) -> FrozenSet[str]:
        return frozenset(self.edges)

    def vertex_set(self) -> FrozenSet[str]:
        return frozenset(self.vertices)

    def sequence(self) -> List[str]:
        out = [self.vertices[0]]
        for e, v in zip(self.edges, self.vertices[1:]):
            out.extend((e, v))
        return out

    def index_of(self, vertex: str) -> Optional[int]:
        try:
            return self.vertices.index(vertex)
        except ValueError:
            return None

    def prefix_to(self, position: int) -> "Walk":
        """Subwalk v₀…v_position."""
        return Walk(self.vertices[: position + 1], self.edges[:position])

    def suffix_from(self, position: int) -> "Walk":
        """Subwalk v_position…v_ℓ."""
        return Walk(self.vertices[position:], self.edges[position:])

    def until_vertex(self, vertex: str) -> "Walk":
        """P·v: the prefix ending at the first occurrence of ``vertex``."""
        i = self.index_of(vertex)
        if i is None:
            raise StructureError(f"Vertex {vertex!r} is not on the walk")
        return self.prefix_to(i)

    def from_vertex(self, vertex: str) -> "Walk":
        """v·P: the suffix starting at the first occurrence of ``vertex``."""
        i = self.index_of(vertex)
        if i is None:
            raise StructureError(f"Vertex {vertex!r} is not on the walk")
        return self.suffix_from(i)

    def then(self, other: "Walk") -> "Walk":
        """Concatenate at the shared vertex ``self.end == other.start``."""
        if self.end != other.start:
            raise StructureError(
                f"Cannot concatenate walk ending at {self.end!r} with one starting at "
                f"{other.start!r}"
            )
        return Walk(self.vertices + other.vertices[1:], self.edges + other.edges)

    def extend(self, edge_id: str, vertex: str) -> "Walk":
        return Walk(self.vertices + (vertex,), self.edges + (edge_id,))

    def __str__(self) -> str:
        return " ".join(self.sequence())
