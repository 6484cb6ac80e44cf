"""Signed path and trail finding, cleanness and edge-cleanness.

Paths are found through the vertex-split reduction: the split graph of B − {x, y}
has a perfect matching exactly when an alternating path joins the neighbours of x
and y, and the matching's symmetric difference with the internal edges traces it.
Trails are paths in the line graph.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Container, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from ..errors import ContractError, InternalError
from ..graph.core import (
    SIGNS,
    BidirectedGraph,
    Edge,
    OrientedEdge,
    Sign,
    SignedVertex,
    SignedVertexSet,
    Walk,
    WalkClass,
    fresh_id,
)
from ..graph.walks import classify_walk, is_trail, signed_end, signed_start
from .matching import Matching, UndirectedGraph, alternating_component_path, perfect_matching
from .reduction import HatReduction, attach_member, build_hat, project_trail

logger = logging.getLogger(__name__)

Orientation = Dict[str, OrientedEdge]


def walk_reachable(
    graph: BidirectedGraph,
    starts: Iterable[SignedVertex],
    ends: Container[SignedVertex],
    allow_trivial: bool = True,
) -> bool:
    """Whether some walk leaves a start (v, α) with sign α and arrives in ``ends``.

    A necessary condition for every path or trail query, decided by breadth-first
    search over (vertex, sign to leave with) states.
    """
    seen: Set[SignedVertex] = set(starts)
    if allow_trivial and any(-s in ends for s in seen):
        return True
    queue = deque(sorted(seen))
    while queue:
        v, s = queue.popleft()
        for e in graph.incident(v):
            if e.sign_at(v) != s:
                continue
            w = e.other(v)
            arrive = SignedVertex(w, e.sign_at(w))
            if arrive in ends:
                return True
            nxt = -arrive
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def _hat_path(red: HatReduction) -> Optional[Walk]:
    plain = UndirectedGraph(red.hat.vertices, frozenset(red.pair_edge))
    near = Matching(frozenset(frozenset(pair) for pair in red.vertex_map.values()))
    perfect = perfect_matching(plain, initial=near)
    if perfect is None:
        return None
    sequence = alternating_component_path(plain, near, perfect, red.x)
    if sequence[-1] != red.y:
        raise InternalError(f"Alternating path from {red.x!r} ended at {sequence[-1]!r}")
    edges = tuple(red.edge_between(a, b) for a, b in zip(sequence, sequence[1:]))
    walk = Walk(tuple(sequence), edges)
    if classify_walk(red.hat, walk) is not WalkClass.PATH:
        raise InternalError(f"Matching produced {walk}, which is not a signed hat path")
    return walk


def find_signed_path(
    graph: BidirectedGraph,
    source: SignedVertex,
    target: SignedVertex,
    forbidden_edges: Iterable[str] = (),
) -> Optional[Walk]:
    """Find a path starting in ``source`` and ending in ``target``, or None."""
    x, alpha = source
    y, beta = target
    graph.require_vertex(x)
    graph.require_vertex(y)
    if x == y:
        raise ContractError(f"Path endpoints must differ, got {x!r} twice")
    forbidden = frozenset(forbidden_edges)

    for e in graph.edges_between(x, y):
        if e.id not in forbidden and e.sign_at(x) == alpha and e.sign_at(y) == beta:
            return Walk((x, y), (e.id,))

    first: Dict[SignedVertex, str] = {}
    for e in graph.incident(x):
        v = e.other(x)
        if e.id not in forbidden and e.sign_at(x) == alpha and v != y:
            first.setdefault(SignedVertex(v, -e.sign_at(v)), e.id)
    last: Dict[SignedVertex, str] = {}
    for e in graph.incident(y):
        v = e.other(y)
        if e.id not in forbidden and e.sign_at(y) == beta and v != x:
            last.setdefault(SignedVertex(v, -e.sign_at(v)), e.id)
    if not first or not last:
        return None

    inner = graph.without_vertices((x, y)).without_edges(forbidden)
    if not walk_reachable(inner, first, last):
        return None
    red = build_hat(inner, frozenset(first), frozenset(last))
    hat_path = _hat_path(red)
    if hat_path is None:
        return None

    middle = project_trail(red, hat_path)
    start = attach_member(red, hat_path.edges[0])
    end = attach_member(red, hat_path.edges[-1])
    if start is None or end is None or start not in first or end not in last:
        raise InternalError(f"Hat path {hat_path} does not use attach edges at both ends")
    result = Walk(
        (x,) + middle.vertices + (y,),
        (first[start],) + middle.edges + (last[end],),
    )
    if (
        classify_walk(graph, result) is not WalkClass.PATH
        or signed_start(graph, result) != source
        or signed_end(graph, result) != target
    ):
        raise InternalError(f"Projected walk {result} is not a {source}–{target} path")
    return result


def find_path(
    graph: BidirectedGraph, x: str, y: str, forbidden_edges: Iterable[str] = ()
) -> Optional[Walk]:
    """Any x–y path avoiding ``forbidden_edges``, trying the four sign pairs in order."""
    forbidden = frozenset(forbidden_edges)
    for alpha in SIGNS:
        for beta in SIGNS:
            path = find_signed_path(graph, SignedVertex(x, alpha), SignedVertex(y, beta), forbidden)
            if path is not None:
                return path
    return None


# ---------------------------------------------------------------------------
# Line graph and trails
# ---------------------------------------------------------------------------


def default_orientation(
    graph: BidirectedGraph, away_from: Optional[str] = None, into: Optional[str] = None
) -> Orientation:
    """Edges at ``away_from`` point away from it, edges at ``into`` point into it,
    all others have the lexicographically smaller endpoint as tail."""
    orientation: Orientation = {}
    for e in graph.edges:
        if away_from is not None and away_from in e.endpoints:
            tail = away_from
        elif into is not None and into in e.endpoints:
            tail = e.other(into)
        else:
            tail = min(e.u, e.v)
        orientation[e.id] = e.orientation_from(tail)
    return orientation


@dataclass(frozen=True)
class LineGraph:
    """Line graph of ``source`` with respect to ``orientation``."""

    source: BidirectedGraph
    graph: BidirectedGraph
    label: Dict[str, str]
    orientation: Orientation

    def tau(self, edge_id: str, vertex: str) -> Sign:
        """+ if ``vertex`` is the head of ν(e), − if it is the tail."""
        oriented = self.orientation[edge_id]
        if vertex == oriented.head:
            return Sign.PLUS
        if vertex == oriented.tail:
            return Sign.MINUS
        raise ContractError(f"{vertex!r} is not an endpoint of {edge_id!r}")

    def trail_to_path(self, trail: Walk) -> Walk:
        """The sequence a nontrivial trail of the source induces in the line graph."""
        index: Dict[Tuple[FrozenSet[str], str], str] = {}
        for edge in self.graph.edges:
            index[(frozenset(edge.endpoints), self.label[edge.id])] = edge.id
        line_edges = []
        for j in range(trail.length - 1):
            key = (frozenset(trail.edges[j : j + 2]), trail.vertices[j + 1])
            if key not in index:
                raise ContractError(f"{trail} does not alternate at {trail.vertices[j + 1]!r}")
            line_edges.append(index[key])
        return Walk(trail.edges, tuple(line_edges))

    def path_to_trail(self, path: Walk, start: str) -> Walk:
        """Project a line-graph path back to the trail starting at ``start``."""
        current = start
        vertices = [start]
        for j, e in enumerate(path.vertices):
            current = self.source.edge(e).other(current)
            vertices.append(current)
            if j < path.length and self.label[path.edges[j]] != current:
                raise InternalError(f"Line-graph path {path} does not project from {start!r}")
        return Walk(tuple(vertices), path.vertices)


def line_graph(graph: BidirectedGraph, orientation: Orientation) -> LineGraph:
    if set(orientation) != set(graph.edge_ids):
        raise ContractError("Orientation must cover exactly the edges of the graph")
    edges: List[Edge] = []
    label: Dict[str, str] = {}
    for v in graph.vertices:
        incident = graph.incident(v)
        for i, e1 in enumerate(incident):
            for e2 in incident[i + 1 :]:
                if e1.sign_at(v) == e2.sign_at(v):
                    continue
                line_id = f"l{len(edges)}"
                tau1 = Sign.PLUS if orientation[e1.id].head == v else Sign.MINUS
                tau2 = Sign.PLUS if orientation[e2.id].head == v else Sign.MINUS
                edges.append(Edge(line_id, e1.id, e2.id, tau1, tau2))
                label[line_id] = v
    return LineGraph(graph, BidirectedGraph(graph.edge_ids, edges), label, orientation)


def trail_between_edges(
    graph: BidirectedGraph,
    entries: Sequence[Tuple[str, str]],
    exits: Sequence[Tuple[str, str]],
    orientation: Optional[Orientation] = None,
) -> Optional[Walk]:
    """Find a trail whose first edge is entered at a given endpoint and whose last
    edge is left at a given endpoint.

    ``entries`` holds ``(edge, vertex the trail starts at)`` and ``exits`` holds
    ``(edge, vertex the trail ends at)``. Two terminal vertices are joined to the
    line graph so that a single path query covers every first/last pair.
    """
    entries = sorted(set(entries))
    exits = sorted(set(exits))
    if not entries or not exits:
        return None
    lg = line_graph(graph, orientation or default_orientation(graph))
    taken = set(graph.edge_ids)
    s = fresh_id(taken, "<start>")
    taken.add(s)
    t = fresh_id(taken, "<end>")
    line_ids = set(lg.graph.edge_ids)
    labels = dict(lg.label)
    terminal_edges = []
    for terminal, ends, stem in ((s, entries, "in"), (t, exits, "out")):
        for i, (e, v) in enumerate(ends):
            line_id = fresh_id(line_ids, f"{stem}{i}")
            line_ids.add(line_id)
            terminal_edges.append(Edge(line_id, terminal, e, Sign.MINUS, lg.tau(e, v)))
            labels[line_id] = v
    augmented = lg.graph.with_additions((s, t), terminal_edges)

    found = find_signed_path(augmented, SignedVertex(s, Sign.MINUS), SignedVertex(t, Sign.MINUS))
    if found is None:
        return None
    inner = Walk(found.vertices[1:-1], found.edges[1:-1])
    trail = lg.path_to_trail(inner, labels[found.edges[0]])
    if trail.end != labels[found.edges[-1]] or not is_trail(graph, trail):
        raise InternalError(f"Line-graph path {found} does not project to a trail")
    return trail


def find_signed_trail(
    graph: BidirectedGraph,
    source: SignedVertex,
    target: SignedVertex,
    forbidden_edges: Iterable[str] = (),
) -> Optional[Walk]:
    """Find a trail starting in ``source`` and ending in ``target``, or None."""
    x, alpha = source
    y, beta = target
    graph.require_vertex(x)
    graph.require_vertex(y)
    if x == y:
        raise ContractError(f"Trail endpoints must differ, got {x!r} twice; use is_edge_clean")
    g = graph.without_edges(forbidden_edges)
    if not walk_reachable(g, [source], {target}):
        return None
    entries = [(e.id, x) for e in g.incident(x) if e.sign_at(x) == alpha]
    exits = [(f.id, y) for f in g.incident(y) if f.sign_at(y) == beta]
    return trail_between_edges(g, entries, exits, default_orientation(g, away_from=x, into=y))


def find_closed_trail(graph: BidirectedGraph, x: str) -> Optional[Walk]:
    """A nontrivial trail starting and ending at ``x``, or None."""
    graph.require_vertex(x)
    both = [SignedVertex(x, s) for s in SIGNS]
    if not walk_reachable(graph, both, set(both), allow_trivial=False):
        return None
    ends = [(e.id, x) for e in graph.incident(x)]
    return trail_between_edges(graph, ends, ends, default_orientation(graph, away_from=x))


def is_edge_clean(graph: BidirectedGraph, x: str) -> bool:
    return find_closed_trail(graph, x) is None


def find_clean_witness(graph: BidirectedGraph, sources: SignedVertexSet) -> Optional[Walk]:
    """A nontrivial path starting and ending in ``sources``, or None."""
    graph.check_signed_set(sources)
    members = sorted(sources)
    for a in members:
        for b in members:
            if a.vertex == b.vertex or not walk_reachable(graph, [a], {b}):
                continue
            path = find_signed_path(graph, a, b)
            if path is not None:
                return path
    return None


def is_clean(graph: BidirectedGraph, sources: SignedVertexSet) -> bool:
    return find_clean_witness(graph, sources) is None
