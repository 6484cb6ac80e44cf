"""Instance generators: the grid counterexample family and seeded random instances."""

import logging
from itertools import combinations, permutations
from typing import Iterator, List, Set, Tuple

import numpy as np

from ..errors import ContractError
from ..graph.core import SIGNS, BidirectedGraph, Edge, Sign, SignedVertex, SignedVertexSet, Walk
from ..graph.transforms import Digraph, set_signs_at_vertex
from ..analysis.pathfinder import find_clean_witness, find_path
from ..analysis.menger_vertex import find_set_path
from ..analysis.reduction import build_hat
from .oracles import brute_is_clean, brute_is_edge_clean

logger = logging.getLogger(__name__)

DEFAULT_SEED = 42

GridInstance = Tuple[BidirectedGraph, SignedVertexSet, SignedVertexSet]


def grid_vertex(i: int, j: int) -> str:
    return f"x_{i}_{j}"


def gen_grid(k: int) -> GridInstance:
    """The grid with no two disjoint 𝒳–𝒴 paths that no k vertices separate.

    Vertices x_{i,j} with 1 ≤ i+j ≤ 2k+1; vertical edges x_{i,j} → x_{i,j+1} for
    i ≥ 1, horizontal edges x_{i,j} → x_{i+1,j} for j ≥ 1 (sign − at the first
    vertex, + at the second), and diagonals x_{i,2k+1−i} x_{i+1,2k−i} with − at both.
    Boundary vertices carry only − half-edges, so 𝒳 = {(x_{0,j}, −)} and
    𝒴 = {(x_{i,0}, −)}.
    """
    if k < 1:
        raise ContractError(f"gen_grid needs k >= 1, got {k}")
    top = 2 * k + 1
    vertices = [grid_vertex(i, s - i) for s in range(1, top + 1) for i in range(s + 1)]
    edges: List[Edge] = []
    for i in range(top + 1):
        for j in range(top + 1 - i):
            if i + j > 2 * k:
                continue
            if i >= 1:
                edges.append(
                    Edge(f"v_{i}_{j}", grid_vertex(i, j), grid_vertex(i, j + 1), Sign.MINUS, Sign.PLUS)
                )
            if j >= 1:
                edges.append(
                    Edge(f"h_{i}_{j}", grid_vertex(i, j), grid_vertex(i + 1, j), Sign.MINUS, Sign.PLUS)
                )
    for i in range(2 * k + 1):
        edges.append(
            Edge(
                f"d_{i}",
                grid_vertex(i, top - i),
                grid_vertex(i + 1, 2 * k - i),
                Sign.MINUS,
                Sign.MINUS,
            )
        )
    sources = frozenset(SignedVertex(grid_vertex(0, j), Sign.MINUS) for j in range(1, top + 1))
    targets = frozenset(SignedVertex(grid_vertex(i, 0), Sign.MINUS) for i in range(1, top + 1))
    return BidirectedGraph(vertices, edges, strict=True), sources, targets


def grid_proof_paths(k: int) -> List[Walk]:
    """The 2k+1 paths P_i: horizontal run from x_{0,i}, one diagonal, vertical run down."""
    top = 2 * k + 1
    paths = []
    for i in range(1, top + 1):
        vertices = [grid_vertex(0, i)]
        edges = []
        for a in range(top - i):
            edges.append(f"h_{a}_{i}")
            vertices.append(grid_vertex(a + 1, i))
        corner = top - i
        edges.append(f"d_{corner}")
        vertices.append(grid_vertex(corner + 1, i - 1))
        for b in range(i - 1, 0, -1):
            edges.append(f"v_{corner + 1}_{b - 1}")
            vertices.append(grid_vertex(corner + 1, b - 1))
        paths.append(Walk(tuple(vertices), tuple(edges)))
    return paths


def gen_edge_counterexample(k: int) -> Tuple[BidirectedGraph, str, str]:
    """The split graph of ``gen_grid(k)`` with its terminals."""
    graph, sources, targets = gen_grid(k)
    red = build_hat(graph, sources, targets)
    return red.hat, red.x, red.y


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------


def _rng(seed) -> np.random.RandomState:
    if isinstance(seed, np.random.RandomState):
        return seed
    return np.random.RandomState(DEFAULT_SEED if seed is None else seed)


def _sign(rng: np.random.RandomState) -> Sign:
    return SIGNS[int(rng.randint(2))]


def random_bidirected(
    n: int, m: int, seed=None, prefix: str = "v"
) -> BidirectedGraph:
    """n vertices and up to m random loop-free edges with uniform signs.

    Parallel edges are kept only when their signs differ; a draw repeating an
    existing signature is discarded.
    """
    rng = _rng(seed)
    vertices = [f"{prefix}{i}" for i in range(n)]
    edges = []
    seen = set()
    if n >= 2:
        for _ in range(m):
            u, v = rng.choice(n, size=2, replace=False)
            edge = Edge(f"e{len(edges)}", vertices[u], vertices[v], _sign(rng), _sign(rng))
            if edge.signature in seen:
                continue
            seen.add(edge.signature)
            edges.append(edge)
    return BidirectedGraph(vertices, edges, strict=True)


def random_digraph(n: int, m: int, seed=None) -> Digraph:
    rng = _rng(seed)
    vertices = tuple(f"v{i}" for i in range(n))
    arcs = []
    if n >= 2:
        seen = set()
        for _ in range(m):
            u, v = rng.choice(n, size=2, replace=False)
            if (u, v) in seen:
                continue
            seen.add((u, v))
            arcs.append((f"a{len(arcs)}", vertices[u], vertices[v]))
    return Digraph(vertices, tuple(arcs))


def _normalised_at(graph: BidirectedGraph, vertex: str) -> BidirectedGraph:
    """All signs at ``vertex`` set to −, dropping edges that become duplicates."""
    graph = set_signs_at_vertex(graph, vertex, Sign.MINUS)
    return graph.without_edges(second for _, second in graph.duplicate_signatures())


def random_edge_clean_instance(
    n: int, m: int, seed=None, tries: int = 20
) -> Tuple[BidirectedGraph, str, str]:
    """A random graph with x = v0 edge-clean and y = v{n-1}.

    Signs at x are normalised to −. Instances with a closed trail at x are
    resampled; after ``tries`` attempts edges at x are dropped until x is clean.
    """
    if n < 2:
        raise ContractError("Need at least two vertices")
    rng = _rng(seed)
    x, y = "v0", f"v{n - 1}"
    graph = _normalised_at(random_bidirected(n, m, rng), x)
    for _ in range(tries):
        if brute_is_edge_clean(graph, x):
            return graph, x, y
        graph = _normalised_at(random_bidirected(n, m, rng), x)
    logger.debug(f"No edge-clean sample in {tries} tries; dropping edges at {x!r}")
    while not brute_is_edge_clean(graph, x):
        at_x = [e.id for e in graph.incident(x)]
        graph = graph.without_edges([at_x[int(rng.randint(len(at_x)))]])
    return graph, x, y


def random_clean_instance(
    n: int, m: int, seed=None, tries: int = 20, max_set: int = 2
) -> GridInstance:
    """A random graph with disjoint random signed sets 𝒳 and 𝒴, 𝒳 clean.

    Falls back to a single member of 𝒳, which is always clean.
    """
    if n < 2:
        raise ContractError("Need at least two vertices")
    rng = _rng(seed)
    for _ in range(tries):
        graph = random_bidirected(n, m, rng)
        order = rng.permutation(n)
        nx = 1 + int(rng.randint(max_set))
        ny = 1 + int(rng.randint(max_set))
        xs = [f"v{i}" for i in order[:nx]]
        ys = [f"v{i}" for i in order[nx : nx + ny]]
        sources = frozenset(SignedVertex(v, _sign(rng)) for v in xs)
        targets = frozenset(SignedVertex(v, _sign(rng)) for v in ys)
        if brute_is_clean(graph, sources):
            return graph, sources, targets
    logger.debug(f"No clean sample in {tries} tries; keeping one member of 𝒳")
    return graph, frozenset([min(sources)]), targets


def random_scale_instance(
    n: int, m: int, set_size: int = 3, seed=None
) -> GridInstance:
    """A larger instance with 𝒳 = {(x, −)} clean, made clean by deleting the last
    edge of each path that returns to 𝒳."""
    rng = _rng(seed)
    graph = random_bidirected(n, m, rng)
    order = rng.permutation(n)
    xs = [f"v{i}" for i in order[:set_size]]
    ys = [f"v{i}" for i in order[set_size : 2 * set_size]]
    for v in xs:
        graph = _normalised_at(graph, v)
    sources = frozenset(SignedVertex(v, Sign.MINUS) for v in xs)
    targets = frozenset(SignedVertex(v, _sign(rng)) for v in ys)
    witness = find_clean_witness(graph, sources)
    while witness is not None:
        graph = graph.without_edges([witness.edges[-1]])
        witness = find_clean_witness(graph, sources)
    return graph, sources, targets


def greedy_disjoint_paths(
    graph: BidirectedGraph, x: str, y: str, k: int
) -> List[Walk]:
    """Up to k edge-disjoint x–y paths, each found after deleting the earlier ones."""
    paths: List[Walk] = []
    used: Set[str] = set()
    while len(paths) < k:
        path = find_path(graph, x, y, forbidden_edges=used)
        if path is None:
            break
        paths.append(path)
        used |= path.edge_set()
    return paths


def greedy_disjoint_set_paths(
    graph: BidirectedGraph,
    sources: SignedVertexSet,
    targets: SignedVertexSet,
    k: int,
) -> List[Walk]:
    """Up to k vertex-disjoint nontrivial 𝒳–𝒴 paths found greedily."""
    paths: List[Walk] = []
    removed: Set[str] = set()
    while len(paths) < k:
        rest = graph.without_vertices(removed)
        xs = frozenset(s for s in sources if s.vertex not in removed)
        ys = frozenset(t for t in targets if t.vertex not in removed)
        path = find_set_path(rest, xs, ys)
        if path is None:
            break
        removed |= path.vertex_set()
        if not path.is_trivial:
            paths.append(path)
    return paths


def random_sizes(
    count: int, max_vertices: int, seed=None, min_vertices: int = 2, density: float = 1.5
) -> List[Tuple[int, int]]:
    """``count`` (n, m) pairs with n ≤ ``max_vertices`` and m ≈ density·n."""
    rng = _rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.randint(min_vertices, max_vertices + 1))
        m = int(rng.randint(1, max(2, int(density * n)) + 1))
        out.append((n, m))
    return out


def all_small_graphs(
    max_vertices: int, max_edges: int, up_to_relabelling: bool = False
) -> Iterator[BidirectedGraph]:
    """Every graph on v0..v{n-1}, n ≤ ``max_vertices``, with at most ``max_edges``
    edges of pairwise distinct signatures.

    With ``up_to_relabelling`` only the lexicographically least edge set of each
    orbit under vertex permutations is produced.
    """
    for n in range(1, max_vertices + 1):
        vertices = [f"v{i}" for i in range(n)]
        slots = [
            (i, j, su, sv) for i, j in combinations(range(n), 2) for su in SIGNS for sv in SIGNS
        ]
        images: List[List[int]] = []
        if up_to_relabelling:
            position = {slot: k for k, slot in enumerate(slots)}
            for p in permutations(range(n)):
                images.append([
                    position[(p[i], p[j], su, sv) if p[i] < p[j] else (p[j], p[i], sv, su)]
                    for i, j, su, sv in slots
                ])
        for size in range(max_edges + 1):
            for chosen in combinations(range(len(slots)), size):
                if any(tuple(sorted(m[k] for k in chosen)) < chosen for m in images):
                    continue
                edges = []
                for index, k in enumerate(chosen):
                    i, j, su, sv = slots[k]
                    edges.append(Edge(f"e{index}", vertices[i], vertices[j], su, sv))
                yield BidirectedGraph(vertices, edges, strict=True)
