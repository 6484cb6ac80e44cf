"""Walk taxonomy: walks, trails, paths, cycles and 𝒳–𝒴 walks."""

from typing import FrozenSet, Iterable, Optional

from ..errors import StructureError
from .core import BidirectedGraph, Sign, SignedVertex, SignedVertexSet, Walk, WalkClass, vertices_of


def _check_references(graph: BidirectedGraph, candidate: Walk) -> None:
    for v in candidate.vertices:
        graph.require_vertex(v)
    for e in candidate.edges:
        graph.edge(e)


def is_alternating(graph: BidirectedGraph, candidate: Walk) -> bool:
    """Incidence and sign alternation at every internal position."""
    _check_references(graph, candidate)
    for j, e in enumerate(candidate.edges):
        edge = graph.edge(e)
        tail, head = candidate.vertices[j], candidate.vertices[j + 1]
        if tail == head or {tail, head} != {edge.u, edge.v}:
            return False
    for i in range(1, candidate.length):
        v = candidate.vertices[i]
        if graph.sign(v, candidate.edges[i - 1]) == graph.sign(v, candidate.edges[i]):
            return False
    return True


def classify_walk(graph: BidirectedGraph, candidate: Walk) -> WalkClass:
    """Return the strongest class of ``candidate`` in ``graph``.

    Raises StructureError for ids the graph does not know.
    """
    if not is_alternating(graph, candidate):
        return WalkClass.INVALID
    if len(set(candidate.edges)) != candidate.length:
        return WalkClass.WALK
    if len(set(candidate.vertices)) == len(candidate.vertices):
        return WalkClass.PATH
    if (
        candidate.length >= 2
        and candidate.start == candidate.end
        and len(set(candidate.vertices[:-1])) == candidate.length
        and graph.sign(candidate.start, candidate.edges[0])
        != graph.sign(candidate.end, candidate.edges[-1])
    ):
        return WalkClass.CYCLE
    return WalkClass.TRAIL


def is_path(graph: BidirectedGraph, candidate: Walk) -> bool:
    return classify_walk(graph, candidate) is WalkClass.PATH


def is_trail(graph: BidirectedGraph, candidate: Walk) -> bool:
    return classify_walk(graph, candidate) in (WalkClass.TRAIL, WalkClass.PATH, WalkClass.CYCLE)


def inverse_walk(w: Walk) -> Walk:
    return Walk(tuple(reversed(w.vertices)), tuple(reversed(w.edges)))


def signed_start(graph: BidirectedGraph, w: Walk) -> Optional[SignedVertex]:
    """(v₀, σ(v₀, e₁)); trivial walks have none."""
    if w.is_trivial:
        return None
    return SignedVertex(w.start, graph.sign(w.start, w.edges[0]))


def signed_end(graph: BidirectedGraph, w: Walk) -> Optional[SignedVertex]:
    """(v_ℓ, σ(v_ℓ, e_ℓ)); trivial walks have none."""
    if w.is_trivial:
        return None
    return SignedVertex(w.end, graph.sign(w.end, w.edges[-1]))


def forms_trivial_set_walk(vertex: str, sources: SignedVertexSet, targets: SignedVertexSet) -> bool:
    """Whether (v,α) ∈ 𝒳 and (v,−α) ∈ 𝒴 for some α."""
    return any(
        SignedVertex(vertex, s) in sources and SignedVertex(vertex, -s) in targets
        for s in (Sign.PLUS, Sign.MINUS)
    )


def classify_set_walk(
    graph: BidirectedGraph, sources: SignedVertexSet, targets: SignedVertexSet, w: Walk
) -> bool:
    """Whether ``w`` is an 𝒳–𝒴 walk for 𝒳 = ``sources`` and 𝒴 = ``targets``."""
    if not is_alternating(graph, w):
        return False
    if w.is_trivial:
        return forms_trivial_set_walk(w.start, sources, targets)
    if signed_start(graph, w) not in sources or signed_end(graph, w) not in targets:
        return False
    blocked = vertices_of(sources) | vertices_of(targets)
    if any(v in blocked for v in w.internal_vertices):
        return False
    return not (
        forms_trivial_set_walk(w.start, sources, targets)
        or forms_trivial_set_walk(w.end, sources, targets)
    )


def is_set_path(
    graph: BidirectedGraph, sources: SignedVertexSet, targets: SignedVertexSet, w: Walk
) -> bool:
    return classify_walk(graph, w) is WalkClass.PATH and classify_set_walk(graph, sources, targets, w)


def require_path(graph: BidirectedGraph, w: Walk, start: str, end: str) -> None:
    """Raise StructureError unless ``w`` is a nontrivial start–end path."""
    if w.is_trivial or w.start != start or w.end != end or not is_path(graph, w):
        raise StructureError(f"{w} is not a {start}–{end} path")


def pairwise_edge_disjoint(walks: Iterable[Walk]) -> bool:
    seen: set = set()
    for w in walks:
        edges: FrozenSet[str] = w.edge_set()
        if seen & edges:
            return False
        seen |= edges
    return True


def pairwise_vertex_disjoint(walks: Iterable[Walk]) -> bool:
    seen: set = set()
    for w in walks:
        vs = w.vertex_set()
        if seen & vs:
            return False
        seen |= vs
    return True
