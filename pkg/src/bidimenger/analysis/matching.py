"""Perfect matchings in undirected simple graphs.

Edmonds' blossom algorithm in its O(V³) form: augmenting paths are grown by
breadth-first search from one exposed vertex at a time, and odd cycles are shrunk
by relabelling the base of every vertex inside them. Vertices are scanned in
lexicographic order so identical inputs always give identical matchings.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..errors import ContractError, InternalError, StructureError

logger = logging.getLogger(__name__)

Pair = FrozenSet[str]


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph; edges are two-element frozensets."""

    vertices: Tuple[str, ...]
    edges: FrozenSet[Pair]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))
        known = set(self.vertices)
        for pair in self.edges:
            if len(pair) != 2:
                raise StructureError(f"Edge {sorted(pair)} is a loop")
            if not pair <= known:
                raise StructureError(f"Edge {sorted(pair)} uses an undeclared vertex")

    @classmethod
    def from_pairs(cls, vertices: Iterable[str], pairs: Iterable[Tuple[str, str]]) -> "UndirectedGraph":
        return cls(tuple(vertices), frozenset(frozenset(p) for p in pairs))

    def neighbors(self) -> Dict[str, List[str]]:
        adj: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for pair in self.edges:
            a, b = sorted(pair)
            adj[a].append(b)
            adj[b].append(a)
        return {v: sorted(ns) for v, ns in adj.items()}


@dataclass(frozen=True)
class Matching:
    """A set of pairwise vertex-disjoint edges."""

    edges: FrozenSet[Pair]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))
        seen: set = set()
        for pair in self.edges:
            if seen & pair:
                raise ContractError(f"Matching edges overlap at {sorted(seen & pair)}")
            seen |= pair

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, str]]) -> "Matching":
        return cls(frozenset(frozenset(p) for p in pairs))

    def mates(self) -> Dict[str, str]:
        out: Dict[str, str] = {}
        for pair in self.edges:
            a, b = sorted(pair)
            out[a] = b
            out[b] = a
        return out

    def covered(self) -> FrozenSet[str]:
        return frozenset(v for pair in self.edges for v in pair)

    def is_perfect_for(self, graph: UndirectedGraph) -> bool:
        return self.edges <= graph.edges and self.covered() == frozenset(graph.vertices)

    def __len__(self) -> int:
        return len(self.edges)


def _augment_from(adj: Sequence[Sequence[int]], match: List[int], root: int) -> bool:
    """Search an augmenting path from exposed ``root`` and apply it if found."""
    n = len(adj)
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    queue = deque([root])

    def lowest_common_ancestor(a: int, b: int) -> int:
        marked = [False] * n
        while True:
            a = base[a]
            marked[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if marked[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int, blossom: List[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and parent[match[to]] != -1):
                current = lowest_common_ancestor(v, to)
                blossom = [False] * n
                mark_path(v, current, to, blossom)
                mark_path(to, current, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = current
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if match[to] == -1:
                    while to != -1:
                        pv = parent[to]
                        nxt = match[pv]
                        match[to] = pv
                        match[pv] = to
                        to = nxt
                    return True
                used[match[to]] = True
                queue.append(match[to])
    return False


def perfect_matching(
    graph: UndirectedGraph, initial: Optional[Matching] = None
) -> Optional[Matching]:
    """Return a perfect matching of ``graph`` or None if there is none.

    ``initial`` seeds the search; it must be a matching of ``graph``. When it leaves
    exactly two vertices exposed a single augmentation decides the question.
    """
    n = len(graph.vertices)
    if n % 2:
        return None
    index = {v: i for i, v in enumerate(graph.vertices)}
    neighbors = graph.neighbors()
    adj = [[index[w] for w in neighbors[v]] for v in graph.vertices]
    match = [-1] * n

    if initial is not None:
        if not initial.edges <= graph.edges:
            raise ContractError("Initial matching uses edges outside the graph")
        for pair in initial.edges:
            a, b = (index[v] for v in pair)
            match[a], match[b] = b, a
    else:
        for v in range(n):
            if match[v] == -1:
                for w in adj[v]:
                    if match[w] == -1:
                        match[v], match[w] = w, v
                        break

    for root in range(n):
        if match[root] != -1:
            continue
        # an exposed vertex without augmenting path stays exposed in every maximum matching
        if not _augment_from(adj, match, root):
            return None

    result = Matching(
        frozenset(
            frozenset((graph.vertices[i], graph.vertices[match[i]]))
            for i in range(n)
            if i < match[i]
        )
    )
    if not result.is_perfect_for(graph):
        raise InternalError("Blossom search returned a matching that is not perfect")
    return result


def alternating_component_path(
    graph: UndirectedGraph, near: Matching, perfect: Matching, start: str
) -> List[str]:
    """Follow the M/M′-alternating path from ``start`` in M ∪ M′.

    ``near`` must cover every vertex except ``start`` and one other vertex t;
    ``perfect`` must be a perfect matching. Returns the vertex sequence from
    ``start`` to t.
    """
    if not perfect.is_perfect_for(graph):
        raise ContractError("Second matching is not perfect")
    exposed = set(graph.vertices) - near.covered()
    if not near.edges <= graph.edges or start not in exposed or len(exposed) != 2:
        raise ContractError(f"First matching must miss exactly {start!r} and one other vertex")
    near_mate = near.mates()
    perfect_mate = perfect.mates()

    path = [start]
    current = start
    while True:
        nxt = perfect_mate[current]
        path.append(nxt)
        if nxt not in near_mate:
            return path
        current = near_mate[nxt]
        if current in path:
            raise InternalError("Alternating walk revisited a vertex")
        path.append(current)
