"""Classical directed Menger numbers by maximum flow."""

from typing import Dict, Iterable, List, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import maximum_flow

from ..errors import ContractError
from ..graph.transforms import Digraph


def _flow_value(n: int, arcs: List[Tuple[int, int, int]], source: int, sink: int) -> int:
    if not arcs:
        return 0
    rows = np.array([a for a, _, _ in arcs], dtype=np.int32)
    cols = np.array([b for _, b, _ in arcs], dtype=np.int32)
    caps = np.array([c for _, _, c in arcs], dtype=np.int32)
    capacity = coo_matrix((caps, (rows, cols)), shape=(n, n)).tocsr()
    return int(maximum_flow(capacity, source, sink).flow_value)


def edge_menger_number(digraph: Digraph, x: str, y: str) -> int:
    """Maximum number of arc-disjoint directed x–y paths."""
    if x == y:
        raise ContractError("x and y must differ")
    index = {v: i for i, v in enumerate(digraph.vertices)}
    arcs = [(index[t], index[h], 1) for _, t, h in digraph.arcs]
    return _flow_value(len(index), arcs, index[x], index[y])


def vertex_menger_number(digraph: Digraph, sources: Iterable[str], targets: Iterable[str]) -> int:
    """Maximum number of vertex-disjoint directed X–Y paths.

    Paths avoid X ∪ Y internally; a vertex of X ∩ Y is a path on its own. Each
    vertex is split into an in-node and an out-node joined by a unit arc.
    """
    xs, ys = set(sources), set(targets)
    blocked = xs | ys
    index: Dict[str, int] = {v: i for i, v in enumerate(digraph.vertices)}
    n = len(index)
    source, sink = 2 * n, 2 * n + 1
    arcs = [(2 * i, 2 * i + 1, 1) for i in range(n)]
    for v in xs:
        arcs.append((source, 2 * index[v], 1))
    for v in ys:
        arcs.append((2 * index[v] + 1, sink, 1))
    for _, tail, head in digraph.arcs:
        tail_ok = tail not in blocked or tail in xs - ys
        head_ok = head not in blocked or head in ys - xs
        if tail_ok and head_ok:
            arcs.append((2 * index[tail] + 1, 2 * index[head], 1))
    return _flow_value(2 * n + 2, arcs, source, sink)
