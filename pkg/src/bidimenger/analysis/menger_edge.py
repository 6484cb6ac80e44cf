"""Edge-disjoint Menger augmentation in bidirected graphs.

Given k edge-disjoint x–y paths with x edge-clean, :func:`edge_menger` returns either
k edges separating x from y (one on each path) or k+1 edge-disjoint x–y paths whose
first k start with the same edges as the inputs.

Each round looks for a path avoiding the current first edges. When that path runs
into an input path at an edge e = vw, the prefixes up to v together with their
appendages are cut out and replaced by a new edge x–w, an apex vertex reached from
x, and one apex edge per endpoint reachable from x inside the removed parts. The
shortened instance is solved recursively and its answer is translated back.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..errors import ContractError, InternalError, PreconditionError, StructureError
from ..graph.core import SIGNS, BidirectedGraph, Edge, OrientedEdge, Sign, SignedVertex, Walk, fresh_id
from ..graph.transforms import Digraph, embed_directed, set_signs_at_vertex
from ..graph.walks import is_path, pairwise_edge_disjoint, require_path
from .appendage import compute_appendage
from .pathfinder import find_closed_trail, find_path, find_signed_path

logger = logging.getLogger(__name__)


class OutcomeKind(str, Enum):
    SEPARATOR = "separator"
    PATHS = "paths"


@dataclass(frozen=True)
class EdgeMengerOutcome:
    """Either a k-edge separator or k+1 edge-disjoint x–y paths."""

    kind: OutcomeKind
    separator: FrozenSet[str] = frozenset()
    paths: Tuple[Walk, ...] = ()
    depth: int = 0


@dataclass(frozen=True)
class AuxEdgeGraph:
    """The shortened instance built around a shared edge."""

    graph: BidirectedGraph
    removed_edge: str
    new_edge_hat: str
    apex: str
    apex_edge: str
    shortcut_edges: Dict[str, Tuple[Walk, int]] = field(default_factory=dict)


def stitch(
    graph: BidirectedGraph,
    first: Walk,
    second: Walk,
    region: FrozenSet[str],
    x: str,
) -> Walk:
    """Join an x–(z,α) path ``first`` and a (z,−α)–y path ``second`` into an x–y path.

    ``first`` may leave ``region`` only with its last edge and ``second`` must avoid
    ``region``. The result uses only edges of the two inputs and keeps the first
    edge of ``first`` unless ``second`` passes through x.
    """
    if first.is_trivial or first.start != x or not is_path(graph, first):
        raise ContractError(f"{first} is not a nontrivial path from {x!r}")
    if first.end != second.start or not is_path(graph, second):
        raise ContractError(f"{second} is not a path continuing {first}")
    if not set(first.edges[:-1]) <= region or second.edge_set() & region:
        raise ContractError("Stitched paths do not respect the appendage region")
    if not second.is_trivial and graph.sign(first.end, first.edges[-1]) == graph.sign(
        second.start, second.edges[0]
    ):
        raise ContractError(f"{first} and {second} do not alternate at {first.end!r}")

    position = {v: j for j, v in enumerate(second.vertices)}
    i = next(i for i, v in enumerate(first.vertices) if v in position)
    a = first.vertices[i]
    j = position[a]
    if i == 0:
        result = second.suffix_from(j)
    elif i == first.length:
        result = first.then(second)
    elif j == second.length:
        result = first.prefix_to(i)
    else:
        if graph.sign(a, first.edges[i - 1]) == graph.sign(a, second.edges[j]):
            raise InternalError(f"Paths {first} and {second} meet at {a!r} with equal signs")
        result = first.prefix_to(i).then(second.suffix_from(j))
    if result.is_trivial or not is_path(graph, result):
        raise InternalError(f"Stitching produced {result}, which is not a path")
    return result


def build_aux_edge(
    graph: BidirectedGraph,
    x: str,
    shared: OrientedEdge,
    path_k: Walk,
    path_next: Walk,
    region_1: FrozenSet[str],
    region_2: FrozenSet[str],
) -> AuxEdgeGraph:
    """Cut out ``region_1 ∪ region_2 ∪ {e}`` and add ê, the apex and its shortcut edges."""
    if any(e.sign_at(x) != Sign.MINUS for e in graph.incident(x)):
        raise ContractError(f"All half-edges at {x!r} must carry sign -")
    if shared not in path_k.oriented_edges or shared not in path_next.oriented_edges:
        raise ContractError(f"{shared} must be a forward edge of both paths")
    e = graph.edge(shared.edge)
    w = shared.head
    taken = set(graph.vertices) | set(graph.edge_ids)

    def claim(stem: str) -> str:
        name = fresh_id(taken, stem)
        taken.add(name)
        return name

    hat_edge = claim(f"{e.id}^")
    apex = claim("a")
    apex_edge = claim("e_a")
    additions = [
        Edge(hat_edge, x, w, Sign.MINUS, e.sign_at(w)),
        Edge(apex_edge, x, apex, Sign.MINUS, Sign.PLUS),
    ]
    shortcuts: Dict[str, Tuple[Walk, int]] = {}
    reached = set()
    for side, region in ((1, region_1), (2, region_2)):
        restricted = graph.restrict_edges(region)
        ends = sorted({v for r in region for v in graph.edge(r).endpoints} - {x})
        for z in ends:
            for alpha in SIGNS:
                target = SignedVertex(z, alpha)
                if target in reached:
                    continue
                witness = find_signed_path(restricted, SignedVertex(x, Sign.MINUS), target)
                if witness is None:
                    continue
                reached.add(target)
                shortcut = claim(f"e({z}{alpha.value})")
                additions.append(Edge(shortcut, apex, z, Sign.MINUS, alpha))
                shortcuts[shortcut] = (witness, side)

    reduced = graph.without_edges(region_1 | region_2 | {e.id}).with_additions([apex], additions)
    return AuxEdgeGraph(reduced, e.id, hat_edge, apex, apex_edge, shortcuts)


def _augment(graph: BidirectedGraph, x: str, y: str, paths: List[Walk], depth: int) -> EdgeMengerOutcome:
    k = len(paths)
    firsts = [p.edges[0] for p in paths]
    extra = find_path(graph, x, y, forbidden_edges=firsts)
    if extra is None:
        logger.debug(f"depth {depth}: first edges {firsts} separate {x!r} from {y!r}")
        return EdgeMengerOutcome(OutcomeKind.SEPARATOR, separator=frozenset(firsts), depth=depth)

    owner = {e: i for i, p in enumerate(paths) for e in p.edges}
    position = next((j for j, e in enumerate(extra.edges) if e in owner), None)
    if position is None:
        logger.debug(f"depth {depth}: found an edge-disjoint path {extra}")
        return EdgeMengerOutcome(OutcomeKind.PATHS, paths=tuple(paths) + (extra,), depth=depth)

    e = extra.edges[position]
    order = list(range(k))
    order[owner[e]], order[-1] = order[-1], order[owner[e]]
    permuted = [paths[o] for o in order]
    path_k = permuted[-1]
    v, w = extra.vertices[position], extra.vertices[position + 1]
    on_k = path_k.edges.index(e)
    if (path_k.vertices[on_k], path_k.vertices[on_k + 1]) != (v, w):
        raise InternalError(f"Edge {e!r} is traversed in opposite directions")

    prefix_1 = path_k.prefix_to(on_k)
    prefix_2 = extra.prefix_to(position)
    region_1 = compute_appendage(graph, prefix_1, x).edges | prefix_1.edge_set()
    region_2 = compute_appendage(graph, prefix_2, x).edges | prefix_2.edge_set()
    aux = build_aux_edge(
        graph, x, OrientedEdge(e, v, w), path_k, extra, region_1, region_2
    )
    shortened = Walk((x,), ()).extend(aux.new_edge_hat, w).then(path_k.suffix_from(on_k + 1))
    if shortened.length >= path_k.length:
        raise InternalError("Recursion did not shorten the rerouted path")
    logger.debug(
        f"depth {depth}: rerouting at {e!r} ({v!r}->{w!r}), "
        f"|A1|={len(region_1)}, |A2|={len(region_2)}, {len(aux.shortcut_edges)} shortcuts"
    )

    inner = _augment(aux.graph, x, y, permuted[:-1] + [shortened], depth + 1)
    if inner.kind is OutcomeKind.SEPARATOR:
        separator = frozenset(e if s == aux.new_edge_hat else s for s in inner.separator)
        return EdgeMengerOutcome(OutcomeKind.SEPARATOR, separator=separator, depth=inner.depth)

    found = list(inner.paths)
    if found[k - 1].edges[0] != aux.new_edge_hat:
        raise InternalError("Recursive outcome lost the prescribed first edge ê")
    tail_k = found[k - 1].suffix_from(1)
    closing = found[k]
    via_1 = prefix_1.extend(e, w)
    via_2 = prefix_2.extend(e, w)
    if closing.edges[0] != aux.apex_edge:
        new_k = stitch(graph, via_1, tail_k, region_1, x)
        new_next = closing
    else:
        witness, side = aux.shortcut_edges[closing.edges[1]]
        after = closing.suffix_from(2)
        if side == 2:
            new_next = stitch(graph, witness, after, region_2, x)
            new_k = stitch(graph, via_1, tail_k, region_1, x)
        else:
            new_k = stitch(graph, witness, after, region_1, x)
            new_next = stitch(graph, via_2, tail_k, region_2, x)

    result: List[Optional[Walk]] = [None] * k
    for idx, original in enumerate(order[:-1]):
        result[original] = found[idx]
    result[order[-1]] = new_k
    ordered = tuple(p for p in result if p is not None) + (new_next,)
    return EdgeMengerOutcome(OutcomeKind.PATHS, paths=ordered, depth=inner.depth)


def _verify(
    graph: BidirectedGraph, x: str, y: str, paths: Sequence[Walk], outcome: EdgeMengerOutcome
) -> None:
    k = len(paths)
    if outcome.kind is OutcomeKind.SEPARATOR:
        if len(outcome.separator) != k or not all(graph.has_edge(e) for e in outcome.separator):
            raise InternalError(f"Separator {sorted(outcome.separator)} does not have size {k}")
        if find_path(graph, x, y, forbidden_edges=outcome.separator) is not None:
            raise InternalError(f"Separator {sorted(outcome.separator)} leaves an x–y path")
        return
    if len(outcome.paths) != k + 1:
        raise InternalError(f"Expected {k + 1} paths, got {len(outcome.paths)}")
    for p in outcome.paths:
        require_path(graph, p, x, y)
    if not pairwise_edge_disjoint(outcome.paths):
        raise InternalError("Returned paths share an edge")
    for given, returned in zip(paths, outcome.paths):
        if given.edges[0] != returned.edges[0]:
            raise InternalError(f"Path starting with {given.edges[0]!r} was not preserved")


def edge_menger(
    graph: BidirectedGraph,
    x: str,
    y: str,
    paths: Sequence[Walk] = (),
    check_precondition: bool = True,
    verify: bool = True,
) -> EdgeMengerOutcome:
    """Augment k edge-disjoint x–y paths or return k separating edges.

    Raises PreconditionError carrying an x–x trail when x is not edge-clean and
    ContractError for malformed input paths.
    """
    graph.require_vertex(x)
    graph.require_vertex(y)
    if x == y:
        raise ContractError("x and y must differ")
    paths = tuple(paths)
    for p in paths:
        try:
            require_path(graph, p, x, y)
        except StructureError as exc:
            raise ContractError(str(exc)) from exc
    if not pairwise_edge_disjoint(paths):
        raise ContractError("Input paths must be pairwise edge-disjoint")
    if check_precondition:
        witness = find_closed_trail(graph, x)
        if witness is not None:
            raise PreconditionError(f"{x!r} is not edge-clean: {witness}", witness)

    normalized = set_signs_at_vertex(graph, x, Sign.MINUS)
    outcome = _augment(normalized, x, y, list(paths), 0)
    if verify:
        _verify(graph, x, y, paths, outcome)
    logger.info(
        f"edge_menger({x!r}, {y!r}, k={len(paths)}): {outcome.kind.value} "
        f"after {outcome.depth} reroutes"
    )
    return outcome


def directed_edge_menger(
    digraph: Digraph, x: str, y: str, paths: Sequence[Walk] = ()
) -> EdgeMengerOutcome:
    """Edge Menger for a digraph: arcs into x are dropped, the rest embedded."""
    return edge_menger(embed_directed(digraph.without_arcs_into(x)), x, y, paths)
