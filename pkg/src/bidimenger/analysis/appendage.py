"""Admissible edge sets and the appendage of a path.

An edge set A is (P, v)-admissible when every orientation of every edge of A starts
a trail inside A ∪ E(P) that ends at v. The appendage is the largest such set; it is
grown from ∅ by absorbing edges of P that some trail from v traverses backwards and
by absorbing ear trails whose signed ends lie in the Bon set.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional

from ..errors import ContractError, InternalError
from ..graph.core import SIGNS, BidirectedGraph, OrientedEdge, SignedVertex, Walk
from ..graph.walks import is_trail
from .pathfinder import default_orientation, find_signed_path, trail_between_edges

logger = logging.getLogger(__name__)

BonSet = FrozenSet[SignedVertex]


@dataclass(frozen=True)
class Appendage:
    """A(P, v) for the path ``base_path`` starting at ``anchor``."""

    base_path: Walk
    anchor: str
    edges: FrozenSet[str]

    def with_path_edges(self) -> FrozenSet[str]:
        """A ∪ E(P)."""
        return self.edges | self.base_path.edge_set()


def _require_anchor(path: Walk, anchor: str) -> None:
    if path.is_trivial or path.start != anchor:
        raise ContractError(f"{anchor!r} must be the start vertex of the nontrivial path {path}")


def _trail_from_oriented_edge_to(
    graph: BidirectedGraph, allowed: FrozenSet[str], oriented: OrientedEdge, target: str
) -> bool:
    """Whether a trail inside ``allowed`` starts with ``oriented`` and ends at ``target``."""
    if oriented.head == target:
        return True
    head = oriented.head
    rest = graph.restrict_edges(allowed - {oriented.edge})
    leave = -graph.sign(head, oriented.edge)
    entries = [(e.id, head) for e in rest.incident(head) if e.sign_at(head) == leave]
    exits = [(e.id, target) for e in rest.incident(target)]
    return trail_between_edges(rest, entries, exits, default_orientation(rest, away_from=head)) is not None


def is_admissible(
    graph: BidirectedGraph, edges: Iterable[str], path: Walk, anchor: str
) -> bool:
    _require_anchor(path, anchor)
    candidate = frozenset(edges)
    allowed = candidate | path.edge_set()
    for edge_id in sorted(candidate):
        for oriented in graph.orientations(edge_id):
            if not _trail_from_oriented_edge_to(graph, allowed, oriented, anchor):
                return False
    return True


def bon(graph: BidirectedGraph, path: Walk, anchor: str, edges: Iterable[str]) -> BonSet:
    """{(v,±)} plus (w, −σ(w,e)) for every head w of an orientation of A or of P's forward edges."""
    _require_anchor(path, anchor)
    members = {SignedVertex(anchor, s) for s in SIGNS}
    heads = [o for e in edges for o in graph.orientations(e)] + list(path.oriented_edges)
    for oriented in heads:
        members.add(SignedVertex(oriented.head, -graph.sign(oriented.head, oriented.edge)))
    return frozenset(members)


def is_ear_trail(
    graph: BidirectedGraph, trail: Walk, path: Walk, anchor: str, edges: Iterable[str]
) -> bool:
    used = frozenset(edges) | path.edge_set()
    if trail.is_trivial or not is_trail(graph, trail) or trail.edge_set() & used:
        return False
    members = bon(graph, path, anchor, edges)
    start = SignedVertex(trail.start, graph.sign(trail.start, trail.edges[0]))
    end = SignedVertex(trail.end, graph.sign(trail.end, trail.edges[-1]))
    return start in members and end in members


def find_ear_trail(
    graph: BidirectedGraph, path: Walk, anchor: str, edges: Iterable[str]
) -> Optional[Walk]:
    """A (P, v, A)-ear trail, or None."""
    absorbed = frozenset(edges)
    members = bon(graph, path, anchor, absorbed)
    outside = graph.without_edges(absorbed | path.edge_set())
    ends = [
        (e.id, w)
        for e in outside.edges
        for w in e.endpoints
        if SignedVertex(w, e.sign_at(w)) in members
    ]
    trail = trail_between_edges(outside, ends, ends)
    if trail is not None and not is_ear_trail(graph, trail, path, anchor, absorbed):
        raise InternalError(f"{trail} fails the ear-trail conditions")
    return trail


def _reverse_trail_exists(
    graph: BidirectedGraph, allowed: FrozenSet[str], anchor: str, oriented: OrientedEdge
) -> bool:
    """Whether a trail in ``allowed`` starts at the anchor and ends with ``oriented`` reversed."""
    back = oriented.reversed()
    rest = graph.restrict_edges(allowed - {oriented.edge})
    arrive = -graph.sign(back.tail, oriented.edge)
    entries = [(e.id, anchor) for e in rest.incident(anchor)]
    exits = [(e.id, back.tail) for e in rest.incident(back.tail) if e.sign_at(back.tail) == arrive]
    return trail_between_edges(rest, entries, exits, default_orientation(rest, away_from=anchor)) is not None


def compute_appendage(graph: BidirectedGraph, path: Walk, anchor: str) -> Appendage:
    """The maximal (P, v)-admissible set; ``anchor`` should be edge-clean."""
    _require_anchor(path, anchor)
    absorbed: FrozenSet[str] = frozenset()
    path_edges = path.edge_set()
    forward = {o.edge: o for o in path.oriented_edges}
    for _ in range(graph.num_edges() + 1):
        allowed = absorbed | path_edges
        grown = next(
            (
                e
                for e in sorted(path_edges - absorbed)
                if _reverse_trail_exists(graph, allowed, anchor, forward[e])
            ),
            None,
        )
        if grown is not None:
            logger.debug(f"Appendage of {anchor!r} absorbs path edge {grown!r}")
            absorbed = absorbed | {grown}
            continue
        ear = find_ear_trail(graph, path, anchor, absorbed)
        if ear is None:
            return Appendage(path, anchor, absorbed)
        logger.debug(f"Appendage of {anchor!r} absorbs ear {ear}")
        absorbed = absorbed | ear.edge_set()
    raise InternalError("Appendage construction did not terminate")


def good_path(
    graph: BidirectedGraph, appendage: Appendage, target: SignedVertex
) -> Optional[Walk]:
    """An x–target path inside A ∪ E(P), or None.

    P is ``appendage.base_path``, x is ``appendage.anchor`` and A the appendage edges.
    The path may leave x with either sign and must reach ``target`` with its sign.
    """
    inside = appendage.with_path_edges()
    touched = {appendage.anchor} | {
        v for e in inside for v in graph.edge(e).endpoints
    }
    if target.vertex not in touched:
        raise ContractError(f"{target} lies outside V(A) ∪ V(P)")
    if target.vertex == appendage.anchor:
        return None
    restricted = graph.restrict_edges(inside)
    for s in SIGNS:
        found = find_signed_path(restricted, SignedVertex(appendage.anchor, s), target)
        if found is not None:
            return found
    return None
