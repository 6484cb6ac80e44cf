"""Vertex-split reduction from signed-set paths to x–y paths.

Every vertex v is split into v⁺ and v⁻ joined by an internal edge (sign + at v⁻,
− at v⁺); an edge uv becomes an edge between u^{σ(u,e)} and v^{σ(v,e)} with the
same signs; a terminal x joins v^α for every (v,−α) ∈ 𝒳 with sign − at x and α at
v^α, and a terminal y is attached to 𝒴 in the same way.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from ..errors import ContractError, InternalError
from ..graph.core import BidirectedGraph, Edge, Sign, SignedVertex, SignedVertexSet, Walk, WalkClass
from ..graph.walks import classify_walk, is_set_path, signed_end, signed_start

X_TERMINAL = "x"
Y_TERMINAL = "y"


def split_name(vertex: str, sign: Sign) -> str:
    return f"{vertex}^{sign.value}"


@dataclass(frozen=True)
class HatReduction:
    """The split graph together with the maps back to its source."""

    source: BidirectedGraph
    sources: SignedVertexSet
    targets: SignedVertexSet
    hat: BidirectedGraph
    x: str
    y: str
    vertex_map: Dict[str, Tuple[str, str]]
    edge_map: Dict[str, str]
    x_attach: Dict[SignedVertex, str]
    y_attach: Dict[SignedVertex, str]
    split_source: Dict[str, SignedVertex]
    internal_source: Dict[str, str]
    image_source: Dict[str, str]
    attach_source: Dict[str, Tuple[str, SignedVertex]]
    pair_edge: Dict[FrozenSet[str], str]

    def internal_edge(self, vertex: str) -> str:
        return f"s:{vertex}"

    def edge_between(self, a: str, b: str) -> str:
        """First hat edge joining ``a`` and ``b``."""
        try:
            return self.pair_edge[frozenset((a, b))]
        except KeyError:
            raise InternalError(f"No hat edge between {a!r} and {b!r}") from None


def build_hat(
    graph: BidirectedGraph, sources: SignedVertexSet, targets: SignedVertexSet
) -> HatReduction:
    graph.check_signed_set(sources)
    graph.check_signed_set(targets)
    vertices = [X_TERMINAL, Y_TERMINAL]
    edges: List[Edge] = []
    vertex_map: Dict[str, Tuple[str, str]] = {}
    split_source: Dict[str, SignedVertex] = {}
    internal_source: Dict[str, str] = {}
    for v in graph.vertices:
        plus, minus = split_name(v, Sign.PLUS), split_name(v, Sign.MINUS)
        vertex_map[v] = (plus, minus)
        split_source[plus] = SignedVertex(v, Sign.PLUS)
        split_source[minus] = SignedVertex(v, Sign.MINUS)
        vertices.extend((plus, minus))
        internal = f"s:{v}"
        internal_source[internal] = v
        edges.append(Edge(internal, minus, plus, Sign.PLUS, Sign.MINUS))

    edge_map: Dict[str, str] = {}
    image_source: Dict[str, str] = {}
    for e in graph.edges:
        hat_id = f"e:{e.id}"
        edge_map[e.id] = hat_id
        image_source[hat_id] = e.id
        edges.append(
            Edge(hat_id, split_name(e.u, e.sign_u), split_name(e.v, e.sign_v), e.sign_u, e.sign_v)
        )

    x_attach: Dict[SignedVertex, str] = {}
    y_attach: Dict[SignedVertex, str] = {}
    attach_source: Dict[str, Tuple[str, SignedVertex]] = {}
    for terminal, members, attach in (
        (X_TERMINAL, sources, x_attach),
        (Y_TERMINAL, targets, y_attach),
    ):
        for member in sorted(members):
            side = -member.sign
            hat_id = f"{terminal}:{member.vertex}{member.sign.value}"
            attach[member] = hat_id
            attach_source[hat_id] = (terminal, member)
            edges.append(
                Edge(hat_id, terminal, split_name(member.vertex, side), Sign.MINUS, side)
            )

    hat = BidirectedGraph(vertices, edges)
    pair_edge: Dict[FrozenSet[str], str] = {}
    for e in hat.edges:
        pair_edge.setdefault(frozenset(e.endpoints), e.id)
    return HatReduction(
        source=graph,
        sources=frozenset(sources),
        targets=frozenset(targets),
        hat=hat,
        x=X_TERMINAL,
        y=Y_TERMINAL,
        vertex_map=vertex_map,
        edge_map=edge_map,
        x_attach=x_attach,
        y_attach=y_attach,
        split_source=split_source,
        internal_source=internal_source,
        image_source=image_source,
        attach_source=attach_source,
        pair_edge=pair_edge,
    )


def lift_path(red: HatReduction, path: Walk) -> Walk:
    """Lift a nontrivial 𝒳–𝒴 path of the source to an x–y path of the hat."""
    if path.is_trivial:
        raise ContractError("Trivial 𝒳–𝒴 paths have no lift")
    if not is_set_path(red.source, red.sources, red.targets, path):
        raise ContractError(f"{path} is not an 𝒳–𝒴 path")
    start = signed_start(red.source, path)
    end = signed_end(red.source, path)
    assert start is not None and end is not None

    vertices = [red.x]
    edges = [red.x_attach[start]]
    for j, v in enumerate(path.vertices):
        if j == 0:
            enter = -start.sign
        else:
            enter = red.source.sign(v, path.edges[j - 1])
        vertices.extend((split_name(v, enter), split_name(v, -enter)))
        edges.append(f"s:{v}")
        if j < path.length:
            edges.append(red.edge_map[path.edges[j]])
    vertices.append(red.y)
    edges.append(red.y_attach[end])
    lifted = Walk(tuple(vertices), tuple(edges))
    if classify_walk(red.hat, lifted) is not WalkClass.PATH:
        raise InternalError(f"Lift of {path} is not a hat path")
    return lifted


def project_trail(red: HatReduction, trail: Walk) -> Walk:
    """Contract a hat x–y trail (or nontrivial x–x trail) to a source path.

    Internal vertices must be split vertices visited once, every second edge
    internal; the first and last edges are attach edges.
    """
    if trail.length < 3 or trail.start != red.x or trail.end not in (red.x, red.y):
        raise InternalError(f"{trail} is not a nontrivial x–y or x–x hat trail")
    inner = trail.internal_vertices
    if len(inner) % 2 or len(set(inner)) != len(inner):
        raise InternalError(f"Hat trail {trail} repeats a split vertex")
    if trail.edges[0] not in red.attach_source or trail.edges[-1] not in red.attach_source:
        raise InternalError(f"Hat trail {trail} does not start and end with attach edges")

    vertices: List[str] = []
    edges: List[str] = []
    for j in range(0, len(inner), 2):
        a, b = red.split_source[inner[j]], red.split_source[inner[j + 1]]
        internal = trail.edges[j + 1]
        if a.vertex != b.vertex or red.internal_source.get(internal) != a.vertex:
            raise InternalError(f"Hat trail {trail} breaks the internal-edge pattern")
        vertices.append(a.vertex)
        if j + 2 < len(inner):
            image = trail.edges[j + 2]
            if image not in red.image_source:
                raise InternalError(f"Hat trail {trail} uses {image!r} between split pairs")
            edges.append(red.image_source[image])
    projected = Walk(tuple(vertices), tuple(edges))
    if classify_walk(red.source, projected) is not WalkClass.PATH:
        raise InternalError(f"Projection of {trail} is not a path")
    return projected


def transfer_separator(red: HatReduction, hat_edges: Iterable[str]) -> FrozenSet[str]:
    """Map a hat edge separator to a source vertex separator."""
    out = set()
    for e in hat_edges:
        if e in red.internal_source:
            out.add(red.internal_source[e])
        elif e in red.image_source:
            source = red.source.edge(red.image_source[e])
            out.add(min(source.u, source.v))
        elif e in red.attach_source:
            out.add(red.attach_source[e][1].vertex)
        else:
            raise ContractError(f"{e!r} is not an edge of the hat graph")
    return frozenset(out)


def attach_member(red: HatReduction, hat_edge: str) -> Optional[SignedVertex]:
    """The 𝒳- or 𝒴-member an attach edge stands for."""
    entry = red.attach_source.get(hat_edge)
    return entry[1] if entry else None
