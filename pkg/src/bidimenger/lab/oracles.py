"""Exhaustive oracles: backtracking enumeration of paths and trails, maximum
disjoint families, minimum separators, appendages and cleanness.

Nothing here calls the polynomial algorithms; these functions are the ground
truth the algorithms are tested against and what ``check`` uses to confirm
negative claims. Families and separators are searched over bitmasks of the
enumerated walks.
"""

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from ..errors import BoundExceededError, ContractError
from ..graph.core import (
    SIGNS,
    BidirectedGraph,
    OrientedEdge,
    Sign,
    SignedVertex,
    SignedVertexSet,
    Walk,
    vertices_of,
)
from ..graph.walks import forms_trivial_set_walk

logger = logging.getLogger(__name__)

ENUMERATION_VERTEX_LIMIT = 10
APPENDAGE_EDGE_LIMIT = 12


class OracleMode(str, Enum):
    VERTEX = "vertex"
    EDGE = "edge"
    TRAIL = "trail"


def _check_bound(graph: BidirectedGraph, limit: Optional[int]) -> None:
    bound = ENUMERATION_VERTEX_LIMIT if limit is None else limit
    if graph.num_vertices() > bound:
        raise BoundExceededError(
            f"Exhaustive search is limited to {bound} vertices, got {graph.num_vertices()}"
        )


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def iter_walks_from(
    graph: BidirectedGraph, start: SignedVertex, distinct_vertices: bool = True
) -> Iterator[Walk]:
    """Every nontrivial path (or trail) leaving ``start.vertex`` with ``start.sign``."""
    vertices = [start.vertex]
    edges: List[str] = []
    used_vertices = {start.vertex}
    used_edges: Set[str] = set()

    def grow(v: str, leave: Sign) -> Iterator[Walk]:
        for e in graph.incident(v):
            if e.sign_at(v) != leave or e.id in used_edges:
                continue
            w = e.other(v)
            if distinct_vertices and w in used_vertices:
                continue
            vertices.append(w)
            edges.append(e.id)
            used_edges.add(e.id)
            fresh = w not in used_vertices
            used_vertices.add(w)
            yield Walk(tuple(vertices), tuple(edges))
            yield from grow(w, -e.sign_at(w))
            vertices.pop()
            edges.pop()
            used_edges.discard(e.id)
            if fresh:
                used_vertices.discard(w)

    yield from grow(start.vertex, start.sign)


def iter_xy_walks(
    graph: BidirectedGraph, x: str, y: str, trails: bool = False
) -> Iterator[Walk]:
    """All x–y paths, or all x–y trails with ``trails``."""
    for s in SIGNS:
        for w in iter_walks_from(graph, SignedVertex(x, s), distinct_vertices=not trails):
            if w.end == y:
                yield w


def _is_set_walk_end(
    graph: BidirectedGraph, w: Walk, sources: SignedVertexSet, targets: SignedVertexSet
) -> bool:
    end = SignedVertex(w.end, graph.sign(w.end, w.edges[-1]))
    if end not in targets:
        return False
    blocked = vertices_of(sources) | vertices_of(targets)
    if any(v in blocked for v in w.internal_vertices):
        return False
    return not (
        forms_trivial_set_walk(w.start, sources, targets)
        or forms_trivial_set_walk(w.end, sources, targets)
    )


def enum_set_paths(
    graph: BidirectedGraph,
    sources: SignedVertexSet,
    targets: SignedVertexSet,
    relaxed: bool = False,
    vertex_limit: Optional[int] = None,
) -> List[Walk]:
    """All 𝒳–𝒴 paths, trivial ones included.

    With ``relaxed`` the paths may meet V(𝒳) ∪ V(𝒴) internally and may contain
    trivial 𝒳–𝒴 paths: every path starting in 𝒳 and ending in 𝒴 counts.
    """
    _check_bound(graph, vertex_limit)
    found = [
        Walk.trivial(v)
        for v in sorted(vertices_of(sources))
        if forms_trivial_set_walk(v, sources, targets)
    ]
    for start in sorted(sources):
        for w in iter_walks_from(graph, start):
            if relaxed:
                if SignedVertex(w.end, graph.sign(w.end, w.edges[-1])) in targets:
                    found.append(w)
            elif _is_set_walk_end(graph, w, sources, targets):
                found.append(w)
    return found


def enum_paths(
    graph: BidirectedGraph,
    source,
    target,
    mode: OracleMode = OracleMode.VERTEX,
    vertex_limit: Optional[int] = None,
) -> List[Walk]:
    """𝒳–𝒴 paths in vertex mode, x–y paths in edge mode, x–y trails in trail mode."""
    mode = OracleMode(mode)
    if mode is OracleMode.VERTEX:
        return enum_set_paths(graph, source, target, vertex_limit=vertex_limit)
    _check_bound(graph, vertex_limit)
    return list(iter_xy_walks(graph, source, target, trails=mode is OracleMode.TRAIL))


def enum_signed_paths(
    graph: BidirectedGraph, source: SignedVertex, target: SignedVertex, trails: bool = False
) -> List[Walk]:
    """All paths (or trails) starting in ``source`` and ending in ``target``."""
    return [
        w
        for w in iter_walks_from(graph, source, distinct_vertices=not trails)
        if w.end == target.vertex and graph.sign(w.end, w.edges[-1]) == target.sign
    ]


def _walk_may_reach(graph: BidirectedGraph, start: SignedVertex, end: SignedVertex) -> bool:
    seen = {start}
    queue = deque([start])
    while queue:
        v, s = queue.popleft()
        for e in graph.incident(v):
            if e.sign_at(v) != s:
                continue
            w = e.other(v)
            if SignedVertex(w, e.sign_at(w)) == end:
                return True
            nxt = SignedVertex(w, -e.sign_at(w))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def brute_signed_path(
    graph: BidirectedGraph,
    source: SignedVertex,
    target: SignedVertex,
    trails: bool = False,
    vertex_limit: Optional[int] = None,
) -> Optional[Walk]:
    """First path (or trail) from ``source`` to ``target`` found by backtracking.

    Unreachable targets are answered without backtracking and without the size bound.
    """
    if source.vertex == target.vertex and not trails:
        return None
    if not _walk_may_reach(graph, source, target):
        return None
    _check_bound(graph, vertex_limit)
    for w in iter_walks_from(graph, source, distinct_vertices=not trails):
        if w.end == target.vertex and graph.sign(w.end, w.edges[-1]) == target.sign:
            return w
    return None


def has_path_avoiding(
    graph: BidirectedGraph,
    x: str,
    y: str,
    removed_edges: Iterable[str] = (),
    vertex_limit: Optional[int] = None,
) -> bool:
    """Whether an x–y path survives in B − ``removed_edges``."""
    rest = graph.without_edges(removed_edges)
    return any(
        brute_signed_path(rest, SignedVertex(x, a), SignedVertex(y, b), vertex_limit=vertex_limit)
        is not None
        for a in SIGNS
        for b in SIGNS
    )


def has_set_path_avoiding(
    graph: BidirectedGraph,
    sources: SignedVertexSet,
    targets: SignedVertexSet,
    removed_vertices: Iterable[str] = (),
    vertex_limit: Optional[int] = None,
) -> bool:
    """Whether an 𝒳–𝒴 path survives in B − ``removed_vertices``."""
    removed = frozenset(removed_vertices)
    rest = graph.without_vertices(removed)
    xs = frozenset(m for m in sources if m.vertex not in removed)
    ys = frozenset(m for m in targets if m.vertex not in removed)
    if any(forms_trivial_set_walk(v, xs, ys) for v in vertices_of(xs)):
        return True
    for start in sorted(xs):
        if not any(
            end.vertex != start.vertex and _walk_may_reach(rest, start, end) for end in ys
        ):
            continue
        _check_bound(rest, vertex_limit)
        if any(_is_set_walk_end(rest, w, xs, ys) for w in iter_walks_from(rest, start)):
            return True
    return False


# ---------------------------------------------------------------------------
# Cleanness
# ---------------------------------------------------------------------------


def brute_closed_trail(
    graph: BidirectedGraph, x: str, vertex_limit: Optional[int] = None
) -> Optional[Walk]:
    """A nontrivial x–x trail, or None."""
    _check_bound(graph, vertex_limit)
    for s in SIGNS:
        for w in iter_walks_from(graph, SignedVertex(x, s), distinct_vertices=False):
            if w.end == x:
                return w
    return None


def brute_is_edge_clean(
    graph: BidirectedGraph, x: str, vertex_limit: Optional[int] = None
) -> bool:
    return brute_closed_trail(graph, x, vertex_limit) is None


def brute_clean_witness(
    graph: BidirectedGraph, sources: SignedVertexSet, vertex_limit: Optional[int] = None
) -> Optional[Walk]:
    """A nontrivial path starting and ending in ``sources``, or None."""
    _check_bound(graph, vertex_limit)
    for start in sorted(sources):
        for w in iter_walks_from(graph, start):
            if SignedVertex(w.end, graph.sign(w.end, w.edges[-1])) in sources:
                return w
    return None


def brute_is_clean(
    graph: BidirectedGraph, sources: SignedVertexSet, vertex_limit: Optional[int] = None
) -> bool:
    return brute_clean_witness(graph, sources, vertex_limit) is None


# ---------------------------------------------------------------------------
# Disjoint families and separators
# ---------------------------------------------------------------------------


def _masks(walks: Sequence[Walk], by_edges: bool) -> Tuple[List[int], List[str]]:
    items = sorted({i for w in walks for i in (w.edges if by_edges else w.vertices)})
    bit = {item: 1 << n for n, item in enumerate(items)}
    masks = []
    for w in walks:
        mask = 0
        for item in w.edges if by_edges else w.vertices:
            mask |= bit[item]
        masks.append(mask)
    return masks, items


def disjoint_families(
    walks: Sequence[Walk], by_edges: bool, size: int, required: Sequence[int] = ()
) -> Iterator[Tuple[int, ...]]:
    """Index tuples of ``size`` pairwise disjoint walks containing ``required``."""
    masks, _ = _masks(walks, by_edges)
    base = 0
    for i in required:
        if base & masks[i]:
            return
        base |= masks[i]
    chosen = list(required)
    if len(chosen) >= size:
        yield tuple(chosen[:size])
        return

    def extend(start: int, used: int) -> Iterator[Tuple[int, ...]]:
        if len(chosen) == size:
            yield tuple(chosen)
            return
        for i in range(start, len(masks)):
            if i in required or used & masks[i]:
                continue
            chosen.append(i)
            yield from extend(i + 1, used | masks[i])
            chosen.pop()

    yield from extend(0, base)


def max_disjoint(
    walks: Sequence[Walk], by_edges: bool, cap: Optional[int] = None
) -> Tuple[Walk, ...]:
    """A largest pairwise disjoint subfamily, stopping early at ``cap``."""
    best: Tuple[int, ...] = ()
    upper = len(walks) if cap is None else min(cap, len(walks))
    for size in range(1, upper + 1):
        family = next(disjoint_families(walks, by_edges, size), None)
        if family is None:
            break
        best = family
    return tuple(walks[i] for i in best)


def min_hitting_set(
    walks: Sequence[Walk], by_edges: bool, cap: Optional[int] = None
) -> Optional[FrozenSet[str]]:
    """A smallest set of vertices (or edges) meeting every walk; None above ``cap``."""
    masks, items = _masks(walks, by_edges)
    upper = len(items) if cap is None else min(cap, len(items))
    for size in range(upper + 1):
        for combo in combinations(range(len(items)), size):
            hit = 0
            for n in combo:
                hit |= 1 << n
            if all(mask & hit for mask in masks):
                return frozenset(items[n] for n in combo)
    return None


@dataclass(frozen=True)
class OracleReport:
    """Exact optima with witnesses; ``min_separator`` is None when above the cap."""

    mode: OracleMode
    max_disjoint: int
    min_separator: Optional[int]
    family: Tuple[Walk, ...]
    separator: Optional[FrozenSet[str]]
    path_count: int


def brute_menger(
    graph: BidirectedGraph,
    source,
    target,
    mode: OracleMode = OracleMode.VERTEX,
    k: Optional[int] = None,
    relaxed: bool = False,
    vertex_limit: Optional[int] = None,
) -> OracleReport:
    """Maximum disjoint family and minimum separator by exhaustive search.

    Vertex mode takes signed sets 𝒳 and 𝒴, edge mode takes vertices x and y. With
    ``k`` the family search stops at k+1 paths and the separator search at size k.
    """
    mode = OracleMode(mode)
    if mode is OracleMode.TRAIL:
        raise ContractError("brute_menger counts paths; use enum_paths for trails")
    by_edges = mode is OracleMode.EDGE
    if by_edges:
        _check_bound(graph, vertex_limit)
        walks = list(iter_xy_walks(graph, source, target))
    else:
        walks = enum_set_paths(graph, source, target, relaxed=relaxed, vertex_limit=vertex_limit)
    family = max_disjoint(walks, by_edges, cap=None if k is None else k + 1)
    separator = min_hitting_set(walks, by_edges, cap=k)
    logger.debug(
        f"brute_menger[{mode.value}]: {len(walks)} paths, family {len(family)}, "
        f"separator {None if separator is None else len(separator)}"
    )
    return OracleReport(
        mode=mode,
        max_disjoint=len(family),
        min_separator=None if separator is None else len(separator),
        family=family,
        separator=separator,
        path_count=len(walks),
    )


def signed_start_families(
    graph: BidirectedGraph,
    sources: SignedVertexSet,
    targets: SignedVertexSet,
    size: int,
    start: SignedVertex,
) -> List[Tuple[Walk, ...]]:
    """Vertex-disjoint families of ``size`` 𝒳–𝒴 paths with one path starting in ``start``."""
    walks = enum_set_paths(graph, sources, targets)
    out = []
    for i, w in enumerate(walks):
        if w.is_trivial or SignedVertex(w.start, graph.sign(w.start, w.edges[0])) != start:
            continue
        for family in disjoint_families(walks, False, size, required=(i,)):
            out.append(tuple(walks[j] for j in family))
    return out


# ---------------------------------------------------------------------------
# Appendage
# ---------------------------------------------------------------------------


def _trail_to(
    graph: BidirectedGraph, allowed: FrozenSet[str], oriented: OrientedEdge, target: str
) -> bool:
    if oriented.head == target:
        return True
    used = {oriented.edge}

    def search(v: str, leave: Sign) -> bool:
        for e in graph.incident(v):
            if e.id not in allowed or e.id in used or e.sign_at(v) != leave:
                continue
            w = e.other(v)
            if w == target:
                return True
            used.add(e.id)
            if search(w, -e.sign_at(w)):
                return True
            used.discard(e.id)
        return False

    head = oriented.head
    return search(head, -graph.sign(head, oriented.edge))


def brute_appendage(
    graph: BidirectedGraph, path: Walk, anchor: str, edge_limit: Optional[int] = None
) -> FrozenSet[str]:
    """Union of every (P, anchor)-admissible edge set, by subset enumeration."""
    if path.is_trivial or path.start != anchor:
        raise ContractError(f"{anchor!r} must start the nontrivial path {path}")
    bound = APPENDAGE_EDGE_LIMIT if edge_limit is None else edge_limit
    candidates = sorted(graph.edge_ids)
    if len(candidates) > bound:
        raise BoundExceededError(
            f"brute_appendage is limited to {bound} edges, got {len(candidates)}"
        )
    memo: Dict[Tuple[FrozenSet[str], OrientedEdge], bool] = {}
    union: Set[str] = set()
    for size in range(1, len(candidates) + 1):
        for subset in combinations(candidates, size):
            if set(subset) <= union:
                continue
            allowed = frozenset(subset) | path.edge_set()
            admissible = True
            for edge_id in subset:
                for oriented in graph.orientations(edge_id):
                    key = (allowed, oriented)
                    if key not in memo:
                        memo[key] = _trail_to(graph, allowed, oriented, anchor)
                    if not memo[key]:
                        admissible = False
                        break
                if not admissible:
                    break
            if admissible:
                union |= set(subset)
    return frozenset(union)


def brute_admissible(
    graph: BidirectedGraph, edges: Iterable[str], path: Walk, anchor: str
) -> bool:
    candidate = frozenset(edges)
    allowed = candidate | path.edge_set()
    return all(
        _trail_to(graph, allowed, oriented, anchor)
        for e in sorted(candidate)
        for oriented in graph.orientations(e)
    )
