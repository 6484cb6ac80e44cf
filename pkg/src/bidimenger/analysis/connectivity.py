"""Strong and circular connectivity of bidirected graphs."""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Optional, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..graph.core import SIGNS, BidirectedGraph, SignedVertex, Walk
from .pathfinder import find_signed_path

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CircularDecomposition:
    """Edges lying on some cycle and the vertex partition they induce."""

    cycle_edges: FrozenSet[str]
    components: Tuple[FrozenSet[str], ...]


def _has_path(graph: BidirectedGraph, source: SignedVertex, target: SignedVertex) -> bool:
    return find_signed_path(graph, source, target) is not None


def is_strongly_connected(graph: BidirectedGraph) -> bool:
    """Every pair v ≠ w has signs α, β with a (v,α)–(w,β) and a (v,−α)–(w,−β) path."""
    for v, w in combinations(graph.vertices, 2):
        if not any(
            _has_path(graph, SignedVertex(v, a), SignedVertex(w, b))
            and _has_path(graph, SignedVertex(v, -a), SignedVertex(w, -b))
            for a in SIGNS
            for b in SIGNS
        ):
            logger.debug(f"No complementary path pair between {v!r} and {w!r}")
            return False
    return True


def cycle_through_edge(graph: BidirectedGraph, edge_id: str) -> Optional[Walk]:
    """A cycle u e v … u through the given edge, or None."""
    e = graph.edge(edge_id)
    rest = find_signed_path(
        graph.without_edges([edge_id]),
        SignedVertex(e.v, -e.sign_v),
        SignedVertex(e.u, -e.sign_u),
    )
    if rest is None:
        return None
    return Walk((e.u,), ()).extend(edge_id, e.v).then(rest)


def circular_decomposition(graph: BidirectedGraph) -> CircularDecomposition:
    cycle_edges = frozenset(
        e.id for e in graph.edges if cycle_through_edge(graph, e.id) is not None
    )
    n = graph.num_vertices()
    if n == 0:
        return CircularDecomposition(cycle_edges, ())
    index = {v: i for i, v in enumerate(graph.vertices)}
    rows = np.array([index[graph.edge(e).u] for e in sorted(cycle_edges)], dtype=int)
    cols = np.array([index[graph.edge(e).v] for e in sorted(cycle_edges)], dtype=int)
    adjacency = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    _, labels = connected_components(adjacency, directed=False)
    groups: dict = {}
    for v, label in zip(graph.vertices, labels):
        groups.setdefault(int(label), set()).add(v)
    components = tuple(
        sorted((frozenset(g) for g in groups.values()), key=lambda c: min(c))
    )
    return CircularDecomposition(cycle_edges, components)


def is_circularly_connected(graph: BidirectedGraph) -> bool:
    return len(circular_decomposition(graph).components) <= 1
