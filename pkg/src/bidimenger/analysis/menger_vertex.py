"""Vertex-disjoint Menger paths between signed vertex sets.

The instance is first simplified so that every path from 𝒳 to 𝒴 is an 𝒳–𝒴 path,
then split into the hat graph where vertex-disjointness becomes edge-disjointness
between the terminals x and y. The edge algorithm runs there and its answer is
projected back: internal and attach edges of a hat separator name vertices, and
hat paths contract to source paths with the same start vertices.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..errors import ContractError, InternalError, PreconditionError
from ..graph.core import (
    SIGNS,
    BidirectedGraph,
    Edge,
    Sign,
    SignedVertex,
    SignedVertexSet,
    Walk,
    fresh_id,
    vertices_of,
)
from ..graph.transforms import Digraph, embed_directed
from ..graph.walks import is_set_path, pairwise_vertex_disjoint
from .menger_edge import OutcomeKind, edge_menger
from .pathfinder import find_clean_witness, find_path
from .reduction import (
    HatReduction,
    build_hat,
    lift_path,
    project_trail,
    transfer_separator,
)

__all__ = [
    "SimplifyReport",
    "SimplifyResult",
    "VertexMengerOutcome",
    "HatReduction",
    "build_hat",
    "lift_path",
    "project_trail",
    "transfer_separator",
    "simplify",
    "find_set_path",
    "vertex_menger",
    "relax_endpoints",
    "directed_vertex_menger",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimplifyReport:
    """What :func:`simplify` changed, keyed by the vertex each rule fired at."""

    deleted_edges: Dict[str, Tuple[str, ...]] = field(default_factory=dict)
    signs_set_plus: Tuple[str, ...] = ()
    isolated: Tuple[str, ...] = ()
    dropped_sources: Tuple[SignedVertex, ...] = ()

    @property
    def changed(self) -> bool:
        return bool(self.deleted_edges or self.signs_set_plus or self.isolated)


@dataclass(frozen=True)
class SimplifyResult:
    graph: BidirectedGraph
    sources: SignedVertexSet
    targets: SignedVertexSet
    report: SimplifyReport


def simplify(
    graph: BidirectedGraph, sources: SignedVertexSet, targets: SignedVertexSet
) -> SimplifyResult:
    """Apply the three local modifications at every vertex of V(𝒳) ∪ V(𝒴) at once.

    (a) a sign α with (v,α) ∉ 𝒳 ∪ 𝒴 loses its edges at v;
    (b) both signs in 𝒳∖𝒴 (or both in 𝒴∖𝒳) turn every sign at v into +, and
        (v,−) leaves 𝒳;
    (c) (v,α) ∈ 𝒳 with (v,−α) ∈ 𝒴 isolates v, and (v,−α) leaves 𝒳.
    Deletions are judged on the original signs.
    """
    graph.check_signed_set(sources)
    graph.check_signed_set(targets)
    both = sources | targets
    touched = sorted(vertices_of(both))

    isolated = [
        v
        for v in touched
        if any(SignedVertex(v, s) in sources and SignedVertex(v, -s) in targets for s in SIGNS)
    ]
    plus_only = [
        v
        for v in touched
        if v not in isolated
        and (
            all(SignedVertex(v, s) in sources - targets for s in SIGNS)
            or all(SignedVertex(v, s) in targets - sources for s in SIGNS)
        )
    ]
    deleted: Dict[str, List[str]] = {}
    for v in touched:
        if v in isolated:
            deleted[v] = [e.id for e in graph.incident(v)]
            continue
        missing = [s for s in SIGNS if SignedVertex(v, s) not in both]
        gone = [e.id for e in graph.incident(v) if e.sign_at(v) in missing]
        if gone:
            deleted[v] = gone

    removed = {e for ids in deleted.values() for e in ids}
    kept = graph.without_edges(removed)
    plus_set = set(plus_only)
    rewritten = []
    for e in kept.edges:
        updated = e
        for w in e.endpoints:
            if w in plus_set:
                updated = updated.with_sign(w, Sign.PLUS)
        if updated != e:
            rewritten.append(updated)
    simplified = kept.with_replaced_edges(rewritten)

    dropped = {SignedVertex(v, Sign.MINUS) for v in plus_only} & sources
    for v in isolated:
        for s in SIGNS:
            if SignedVertex(v, s) in sources and SignedVertex(v, -s) in targets:
                dropped |= {SignedVertex(v, -s)} & sources
                # one member of 𝒳 stays to start the trivial path at v
                break
    report = SimplifyReport(
        deleted_edges={v: tuple(ids) for v, ids in deleted.items()},
        signs_set_plus=tuple(plus_only),
        isolated=tuple(isolated),
        dropped_sources=tuple(sorted(dropped)),
    )
    logger.debug(
        f"simplify: {len(removed)} edges deleted, {len(plus_only)} vertices set to +, "
        f"{len(isolated)} isolated"
    )
    return SimplifyResult(simplified, frozenset(sources - dropped), frozenset(targets), report)


def find_set_path(
    graph: BidirectedGraph, sources: SignedVertexSet, targets: SignedVertexSet
) -> Optional[Walk]:
    """Some 𝒳–𝒴 path (possibly trivial), or None."""
    reduced = simplify(graph, sources, targets)
    red = build_hat(reduced.graph, reduced.sources, reduced.targets)
    hat_path = find_path(red.hat, red.x, red.y)
    if hat_path is None:
        return None
    path = project_trail(red, hat_path)
    if not is_set_path(graph, sources, targets, path):
        raise InternalError(f"Projected {path} is not an 𝒳–𝒴 path")
    return path


@dataclass(frozen=True)
class VertexMengerOutcome:
    """Either k separating vertices or k+1 vertex-disjoint 𝒳–𝒴 paths."""

    kind: OutcomeKind
    separator: FrozenSet[str] = frozenset()
    paths: Tuple[Walk, ...] = ()
    depth: int = 0


def _restrict(members: SignedVertexSet, removed: FrozenSet[str]) -> SignedVertexSet:
    return frozenset(m for m in members if m.vertex not in removed)


def _verify(
    graph: BidirectedGraph,
    sources: SignedVertexSet,
    targets: SignedVertexSet,
    paths: Sequence[Walk],
    outcome: VertexMengerOutcome,
) -> None:
    k = len(paths)
    if outcome.kind is OutcomeKind.SEPARATOR:
        separator = outcome.separator
        if len(separator) != k:
            raise InternalError(f"Separator {sorted(separator)} does not have {k} vertices")
        rest = graph.without_vertices(separator)
        if find_set_path(rest, _restrict(sources, separator), _restrict(targets, separator)):
            raise InternalError(f"Separator {sorted(separator)} leaves an 𝒳–𝒴 path")
        return
    if len(outcome.paths) != k + 1:
        raise InternalError(f"Expected {k + 1} paths, got {len(outcome.paths)}")
    for p in outcome.paths:
        if not is_set_path(graph, sources, targets, p):
            raise InternalError(f"{p} is not an 𝒳–𝒴 path")
    if not pairwise_vertex_disjoint(outcome.paths):
        raise InternalError("Returned paths share a vertex")
    for given, returned in zip(paths, outcome.paths):
        if given.start != returned.start:
            raise InternalError(f"Path from {given.start!r} now starts at {returned.start!r}")


def vertex_menger(
    graph: BidirectedGraph,
    sources: SignedVertexSet,
    targets: SignedVertexSet,
    paths: Sequence[Walk] = (),
    check_precondition: bool = True,
    verify: bool = True,
) -> VertexMengerOutcome:
    """Augment k vertex-disjoint 𝒳–𝒴 paths or return k separating vertices.

    Path i of the answer starts at the same vertex as input path i, not
    necessarily with the same sign. Raises PreconditionError carrying a path
    between two members of 𝒳 when 𝒳 is not clean.
    """
    graph.check_signed_set(sources)
    graph.check_signed_set(targets)
    paths = tuple(paths)
    for p in paths:
        if p.is_trivial:
            raise ContractError(f"Trivial 𝒳–𝒴 path at {p.start!r} cannot be augmented")
        if not is_set_path(graph, sources, targets, p):
            raise ContractError(f"{p} is not an 𝒳–𝒴 path")
    if not pairwise_vertex_disjoint(paths):
        raise ContractError("Input paths must be pairwise vertex-disjoint")
    if check_precondition:
        witness = find_clean_witness(graph, sources)
        if witness is not None:
            raise PreconditionError(f"𝒳 is not clean: {witness}", witness)

    reduced = simplify(graph, sources, targets)
    red = build_hat(reduced.graph, reduced.sources, reduced.targets)
    lifted = [lift_path(red, p) for p in paths]
    inner = edge_menger(red.hat, red.x, red.y, lifted, check_precondition=False)

    if inner.kind is OutcomeKind.SEPARATOR:
        outcome = VertexMengerOutcome(
            OutcomeKind.SEPARATOR, separator=transfer_separator(red, inner.separator), depth=inner.depth
        )
    else:
        projected = tuple(project_trail(red, p) for p in inner.paths)
        outcome = VertexMengerOutcome(OutcomeKind.PATHS, paths=projected, depth=inner.depth)
    if verify:
        _verify(graph, sources, targets, paths, outcome)
    logger.info(f"vertex_menger(k={len(paths)}): {outcome.kind.value}")
    return outcome


def relax_endpoints(
    graph: BidirectedGraph, sources: SignedVertexSet, targets: SignedVertexSet
) -> Tuple[BidirectedGraph, SignedVertexSet, SignedVertexSet]:
    """Hang a fresh pendant vertex on every member of 𝒳 and 𝒴.

    For (v, α) the new edge has sign −α at v and α at the new vertex, which becomes
    the member (new, α). 𝒳–𝒴 paths of the result are the paths from 𝒳 to 𝒴 that may
    meet V(𝒳) ∪ V(𝒴) internally.
    """
    graph.check_signed_set(sources)
    graph.check_signed_set(targets)
    taken = set(graph.vertices) | set(graph.edge_ids)
    vertices: List[str] = []
    edges: List[Edge] = []
    relaxed: Dict[str, set] = {"x": set(), "y": set()}
    for side, members in (("x", sources), ("y", targets)):
        for member in sorted(members):
            pendant = fresh_id(taken, f"{member.vertex}.{side}{member.sign.value}")
            taken.add(pendant)
            edge_id = fresh_id(taken, f"{pendant}~")
            taken.add(edge_id)
            vertices.append(pendant)
            edges.append(Edge(edge_id, member.vertex, pendant, -member.sign, member.sign))
            relaxed[side].add(SignedVertex(pendant, member.sign))
    return (
        graph.with_additions(vertices, edges),
        frozenset(relaxed["x"]),
        frozenset(relaxed["y"]),
    )


def directed_vertex_menger(
    digraph: Digraph,
    sources: Sequence[str],
    targets: Sequence[str],
    paths: Sequence[Walk] = (),
) -> VertexMengerOutcome:
    """Vertex Menger for a digraph with 𝒳 = {(x,−)} and 𝒴 = {(y,+)}."""
    graph = embed_directed(digraph)
    x_set = frozenset(SignedVertex(v, Sign.MINUS) for v in sources)
    y_set = frozenset(SignedVertex(v, Sign.PLUS) for v in targets)
    return vertex_menger(graph, x_set, y_set, paths)
