"""Differential validation of the algorithms against the exhaustive oracles.

Each suite generates seeded instances, runs the polynomial algorithm, compares it
with the oracle-lab, and checks every emitted certificate. Produces per-suite CSV
tables and ``validation_summary.json``.
"""

import logging
import time
from itertools import combinations
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from .analysis.appendage import compute_appendage
from .analysis.connectivity import is_circularly_connected, is_strongly_connected
from .analysis.menger_edge import OutcomeKind, directed_edge_menger, edge_menger
from .analysis.menger_vertex import directed_vertex_menger, vertex_menger
from .analysis.pathfinder import default_orientation, find_path, find_signed_path, line_graph
from .errors import PreconditionError
from .graph.core import SIGNS, SignedVertex, WalkClass
from .graph.walks import classify_walk, is_path, signed_end, signed_start
from .io.bgf import GraphDocument, document
from .io.certificates import (
    Certificate,
    Outcome,
    Query,
    check_certificate,
    edge_menger_certificate,
    make_certificate,
    signed_path_certificate,
    vertex_menger_certificate,
)
from .io.writers import save_dataframe, save_json
from .lab.fixtures import fixtures
from .lab.flow import edge_menger_number, vertex_menger_number
from .lab.generators import (
    DEFAULT_SEED,
    all_small_graphs,
    gen_edge_counterexample,
    gen_grid,
    greedy_disjoint_paths,
    greedy_disjoint_set_paths,
    random_bidirected,
    random_clean_instance,
    random_digraph,
    random_edge_clean_instance,
    random_scale_instance,
    random_sizes,
)
from .lab.oracles import (
    OracleMode,
    brute_appendage,
    brute_menger,
    brute_signed_path,
    enum_set_paths,
    has_path_avoiding,
    has_set_path_avoiding,
    iter_walks_from,
    iter_xy_walks,
    max_disjoint,
    signed_start_families,
)
from .sanitize import sanitize_filename

logger = logging.getLogger(__name__)

SUITES = (
    "grid",
    "edge_counterexample",
    "connectivity",
    "pathfinder",
    "trails",
    "appendage",
    "edge_menger",
    "vertex_menger",
    "directed",
    "scale",
)

# Instance counts per suite at each scale; "full" matches the acceptance targets.
SUITE_SIZES: Dict[str, Dict[str, object]] = {
    "grid": {"reduced": (1,), "full": (1, 2)},
    "connectivity": {"reduced": 100, "full": 1000},
    "small_graphs": {"reduced": (3, 3), "full": (4, 6)},
    "pathfinder": {"reduced": 50, "full": 500},
    "appendage": {"reduced": 30, "full": 200},
    "edge_menger": {"reduced": 40, "full": 300},
    "vertex_menger": {"reduced": 40, "full": 300},
    "directed": {"reduced": 30, "full": 200},
    "scale": {"reduced": 2, "full": 10},
}

SCALE_SECONDS = 5.0
TRAIL_EDGE_LIMIT = 8


def _size(suite: str, scale: str):
    return SUITE_SIZES[suite][scale]


class _Tally:
    """Counts certificates checked and the ones that failed."""

    def __init__(self) -> None:
        self.checked = 0
        self.failed: List[str] = []

    def check(self, doc: GraphDocument, cert: Certificate, label: str) -> bool:
        self.checked += 1
        result = check_certificate(doc, cert)
        if not result.valid:
            self.failed.append(f"{label}: {'; '.join(result.problems)}")
        return result.valid


def _verdict(discrepancies: int, tally: Optional[_Tally] = None) -> str:
    failed = discrepancies or (tally is not None and tally.failed)
    return "NOT CONFIRMED" if failed else "CONFIRMED"


def _result(name: str, claim: str, rows: List[dict], started: float, tally: _Tally, **extra) -> dict:
    discrepancies = sum(1 for r in rows if not r.get("agree", True))
    return {
        "suite": name,
        "claim": claim,
        "instances": len(rows),
        "discrepancies": discrepancies,
        "certificates_checked": tally.checked,
        "certificate_failures": tally.failed,
        "seconds": time.perf_counter() - started,
        "rows": rows,
        "verdict": _verdict(discrepancies, tally),
        **extra,
    }


# ---------------------------------------------------------------------------
# Counterexamples
# ---------------------------------------------------------------------------


def validate_grid(seed=DEFAULT_SEED, scale: str = "reduced") -> dict:
    """The grid has no two disjoint 𝒳–𝒴 paths and no k-vertex separator."""
    started = time.perf_counter()
    tally = _Tally()
    rows = []
    for k in _size("grid", scale):
        graph, sources, targets = gen_grid(k)
        walks = enum_set_paths(graph, sources, targets, vertex_limit=graph.num_vertices())
        two_disjoint = len(max_disjoint(walks, by_edges=False, cap=2)) >= 2
        separators = [
            set(s)
            for s in combinations(graph.vertices, k)
            if not has_set_path_avoiding(
                graph, sources, targets, s, vertex_limit=graph.num_vertices()
            )
        ]
        try:
            vertex_menger(graph, sources, targets)
            rejected = False
        except PreconditionError as e:
            rejected = True
            doc = document(graph, {"X": sources, "Y": targets})
            cert = make_certificate(
                graph, Query(command="clean", x_set="X"), Outcome.FALSE, "find_clean_witness",
                paths=(e.witness,),
            )
            tally.check(doc, cert, f"grid({k}) clean")
        rows.append(
            {
                "k": k,
                "vertices": graph.num_vertices(),
                "edges": graph.num_edges(),
                "paths": len(walks),
                "two_disjoint_paths": two_disjoint,
                "separators_of_size_k": len(separators),
                "not_clean": rejected,
                "agree": not two_disjoint and not separators and rejected,
            }
        )
        logger.info(f"grid({k}): {len(walks)} paths, {len(separators)} separators of size {k}")
    return _result("grid", "No k vertices separate 𝒳 from 𝒴, yet no two disjoint paths", rows, started, tally)


def validate_edge_counterexample(seed=DEFAULT_SEED, scale: str = "reduced") -> dict:
    """The split grid has no two edge-disjoint x–y paths and no single-edge separator."""
    started = time.perf_counter()
    graph, x, y = gen_edge_counterexample(1)
    walks = list(iter_xy_walks(graph, x, y))
    two_disjoint = len(max_disjoint(walks, by_edges=True, cap=2)) >= 2
    separating = [
        e for e in graph.edge_ids
        if not has_path_avoiding(graph, x, y, [e], vertex_limit=graph.num_vertices())
    ]
    rows = [
        {
            "vertices": graph.num_vertices(),
            "edges": graph.num_edges(),
            "paths": len(walks),
            "two_disjoint_paths": two_disjoint,
            "separating_edges": len(separating),
            "agree": not two_disjoint and not separating,
        }
    ]
    return _result(
        "edge_counterexample", "No edge separates x from y, yet no two edge-disjoint paths",
        rows, started, _Tally(),
    )


# ---------------------------------------------------------------------------
# Connectivity, paths and trails
# ---------------------------------------------------------------------------


def validate_connectivity(seed=DEFAULT_SEED, scale: str = "reduced") -> dict:
    """Strong connectivity equals circular connectivity."""
    started = time.perf_counter()
    rng = np.random.RandomState(seed)
    rows = []
    for n, m in random_sizes(_size("connectivity", scale), 7, rng):
        graph = random_bidirected(n, m, rng)
        strong, circular = is_strongly_connected(graph), is_circularly_connected(graph)
        rows.append({"family": "random", "n": n, "m": graph.num_edges(),
                     "strong": strong, "circular": circular, "agree": strong == circular})
    max_vertices, max_edges = _size("small_graphs", scale)
    exhaustive = 0
    for graph in all_small_graphs(max_vertices, max_edges, up_to_relabelling=True):
        exhaustive += 1
        strong, circular = is_strongly_connected(graph), is_circularly_connected(graph)
        if strong != circular:
            rows.append({"family": "exhaustive", "n": graph.num_vertices(), "m": graph.num_edges(),
                         "strong": strong, "circular": circular, "agree": False})
    return _result(
        "connectivity", "Strongly connected iff circularly connected", rows, started, _Tally(),
        exhaustive_graphs=exhaustive,
    )


def validate_pathfinder(seed=DEFAULT_SEED, scale: str = "reduced") -> dict:
    """find_signed_path agrees with exhaustive search on every signed endpoint pair."""
    started = time.perf_counter()
    rng = np.random.RandomState(seed)
    tally = _Tally()
    rows = []
    for index, (n, m) in enumerate(random_sizes(_size("pathfinder", scale), 7, rng)):
        graph = random_bidirected(n, m, rng)
        doc = document(graph)
        mismatches = 0
        queries = 0
        for v in graph.vertices:
            for w in graph.vertices:
                if v == w:
                    continue
                for a in SIGNS:
                    for b in SIGNS:
                        source, target = SignedVertex(v, a), SignedVertex(w, b)
                        found = find_signed_path(graph, source, target)
                        expected = brute_signed_path(graph, source, target) is not None
                        queries += 1
                        valid = found is None or (
                            is_path(graph, found)
                            and signed_start(graph, found) == source
                            and signed_end(graph, found) == target
                        )
                        if (found is not None) != expected or not valid:
                            mismatches += 1
                        tally.check(doc, signed_path_certificate(graph, source, target, found),
                                    f"pathfinder #{index} {source}->{target}")
        rows.append({"instance": index, "n": n, "m": graph.num_edges(), "queries": queries,
                     "mismatches": mismatches, "agree": mismatches == 0})
    return _result("pathfinder", "Signed path finding matches enumeration", rows, started, tally)


def validate_trails(seed=DEFAULT_SEED, scale: str = "reduced") -> dict:
    """Every trail of a small fixture maps to a line-graph path and back."""
    started = time.perf_counter()
    rows = []
    for name, fixture in sorted(fixtures().items()):
        graph = fixture.graph
        if graph.num_edges() > TRAIL_EDGE_LIMIT:
            continue
        lg = line_graph(graph, default_orientation(graph))
        trails = 0
        failures = 0
        for v in graph.vertices:
            for s in SIGNS:
                for trail in iter_walks_from(graph, SignedVertex(v, s), distinct_vertices=False):
                    trails += 1
                    path = lg.trail_to_path(trail)
                    back = lg.path_to_trail(path, trail.start)
                    if back != trail or classify_walk(lg.graph, path) is not WalkClass.PATH:
                        failures += 1
        rows.append({"fixture": name, "edges": graph.num_edges(), "trails": trails,
                     "failures": failures, "agree": failures == 0})
    return _result("trails", "Trails correspond to line-graph paths", rows, started, _Tally())


# ---------------------------------------------------------------------------
# Appendages and Menger
# ---------------------------------------------------------------------------


def validate_appendage(seed=DEFAULT_SEED, scale: str = "reduced") -> dict:
    """compute_appendage equals the union of all admissible sets."""
    started = time.perf_counter()
    rng = np.random.RandomState(seed)
    rows = []
    for index, (n, m) in enumerate(random_sizes(_size("appendage", scale), 6, rng, density=1.6)):
        graph, x, _ = random_edge_clean_instance(n, min(m, 10), rng)
        path = next((p for y in graph.vertices if y != x for p in [find_path(graph, x, y)] if p), None)
        if path is None:
            continue
        computed = compute_appendage(graph, path, x).edges
        expected = brute_appendage(graph, path, x)
        rows.append({"instance": index, "n": n, "m": graph.num_edges(), "path_length": path.length,
                     "appendage": len(computed), "agree": computed == expected})
    return _result("appendage", "Appendage construction is maximal", rows, started, _Tally())


def validate_edge_menger(seed=DEFAULT_SEED, scale: str = "reduced") -> dict:
    """edge_menger returns the branch the oracle proves, with valid certificates."""
    started = time.perf_counter()
    rng = np.random.RandomState(seed)
    tally = _Tally()
    rows = []
    for index, (n, m) in enumerate(random_sizes(_size("edge_menger", scale), 7, rng, density=2.0)):
        graph, x, y = random_edge_clean_instance(n, m, rng)
        paths = greedy_disjoint_paths(graph, x, y, int(rng.randint(3)))
        k = len(paths)
        outcome = edge_menger(graph, x, y, paths)
        oracle = brute_menger(graph, x, y, OracleMode.EDGE, k=k)
        more_paths = oracle.max_disjoint >= k + 1
        small_cut = oracle.min_separator is not None and oracle.min_separator <= k
        expected = OutcomeKind.PATHS if more_paths else OutcomeKind.SEPARATOR
        cert = edge_menger_certificate(graph, x, y, paths, outcome)
        valid = tally.check(document(graph), cert, f"edge_menger #{index}")
        rows.append({"instance": index, "n": n, "m": graph.num_edges(), "k": k,
                     "outcome": outcome.kind.value, "oracle_paths": oracle.max_disjoint,
                     "depth": outcome.depth, "exclusive": more_paths != small_cut,
                     "agree": outcome.kind is expected and more_paths != small_cut and valid})
    return _result("edge_menger", "Edge Menger: k separating edges or k+1 paths", rows, started, tally)


def _signed_start_row(tally: _Tally) -> dict:
    fixture = fixtures()["F_SIGNED_START"]
    graph, xs, ys = fixture.graph, fixture.sources, fixture.targets
    outcome = vertex_menger(graph, xs, ys, fixture.paths)
    doc = document(graph, {"X": xs, "Y": ys})
    valid = tally.check(doc, vertex_menger_certificate(graph, "X", "Y", fixture.paths, outcome), "F_SIGNED_START")
    forbidden = signed_start_families(graph, xs, ys, 2, SignedVertex("x1", SIGNS[0]))
    ok = (
        outcome.kind is OutcomeKind.PATHS
        and any(p.start == "x1" for p in outcome.paths)
        and not forbidden
        and valid
    )
    return {"instance": "F_SIGNED_START", "n": graph.num_vertices(), "m": graph.num_edges(), "k": 1,
            "outcome": outcome.kind.value, "oracle_paths": 2, "depth": outcome.depth,
            "exclusive": True, "agree": ok}


def validate_vertex_menger(seed=DEFAULT_SEED, scale: str = "reduced") -> dict:
    """vertex_menger returns the branch the oracle proves, with valid certificates."""
    started = time.perf_counter()
    rng = np.random.RandomState(seed)
    tally = _Tally()
    rows = [_signed_start_row(tally)]
    for index, (n, m) in enumerate(random_sizes(_size("vertex_menger", scale), 7, rng, density=2.0)):
        graph, xs, ys = random_clean_instance(n, m, rng)
        paths = greedy_disjoint_set_paths(graph, xs, ys, int(rng.randint(3)))
        k = len(paths)
        outcome = vertex_menger(graph, xs, ys, paths)
        oracle = brute_menger(graph, xs, ys, OracleMode.VERTEX, k=k)
        more_paths = oracle.max_disjoint >= k + 1
        small_cut = oracle.min_separator is not None and oracle.min_separator <= k
        expected = OutcomeKind.PATHS if more_paths else OutcomeKind.SEPARATOR
        doc = document(graph, {"X": xs, "Y": ys})
        valid = tally.check(doc, vertex_menger_certificate(graph, "X", "Y", paths, outcome),
                            f"vertex_menger #{index}")
        rows.append({"instance": index, "n": n, "m": graph.num_edges(), "k": k,
                     "outcome": outcome.kind.value, "oracle_paths": oracle.max_disjoint,
                     "depth": outcome.depth, "exclusive": more_paths != small_cut,
                     "agree": outcome.kind is expected and more_paths != small_cut and valid})
    return _result("vertex_menger", "Vertex Menger: k separating vertices or k+1 paths",
                   rows, started, tally)


def _iterate(step: Callable, limit: int) -> int:
    """Augment from no paths until a separator appears; the number of paths then."""
    paths: Sequence = ()
    for _ in range(limit + 1):
        outcome = step(paths)
        if outcome.kind is OutcomeKind.SEPARATOR:
            return len(paths)
        paths = outcome.paths
    raise AssertionError("Augmentation did not stop")


def validate_directed(seed=DEFAULT_SEED, scale: str = "reduced") -> dict:
    """On embedded digraphs the Menger numbers equal the max-flow values."""
    started = time.perf_counter()
    rng = np.random.RandomState(seed)
    rows = []
    for index, (n, m) in enumerate(random_sizes(_size("directed", scale), 8, rng, density=2.0)):
        digraph = random_digraph(n, m, rng)
        x, y = "v0", f"v{n - 1}"
        edge_paths = _iterate(lambda ps: directed_edge_menger(digraph, x, y, ps), len(digraph.arcs))
        edge_flow = edge_menger_number(digraph, x, y)
        order = rng.permutation(n)
        split = 1 + int(rng.randint(max(1, n - 1)))
        sources = [f"v{i}" for i in order[:split][:2]]
        targets = [f"v{i}" for i in order[split:][:2]]
        vertex_paths = _iterate(lambda ps: directed_vertex_menger(digraph, sources, targets, ps), n)
        vertex_flow = vertex_menger_number(digraph, sources, targets)
        rows.append({"instance": index, "n": n, "arcs": len(digraph.arcs),
                     "edge_paths": edge_paths, "edge_flow": edge_flow,
                     "vertex_paths": vertex_paths, "vertex_flow": vertex_flow,
                     "agree": edge_paths == edge_flow and vertex_paths == vertex_flow})
    return _result("directed", "Directed Menger numbers match max flow", rows, started, _Tally())


def validate_scale(seed=DEFAULT_SEED, scale: str = "reduced") -> dict:
    """vertex_menger on 50 vertices and 150 edges finishes within the time budget."""
    started = time.perf_counter()
    rng = np.random.RandomState(seed)
    rows = []
    for index in range(_size("scale", scale)):
        graph, xs, ys = random_scale_instance(50, 150, 3, rng)
        paths = greedy_disjoint_set_paths(graph, xs, ys, int(rng.randint(4)))
        tick = time.perf_counter()
        outcome = vertex_menger(graph, xs, ys, paths)
        seconds = time.perf_counter() - tick
        rows.append({"instance": index, "n": graph.num_vertices(), "m": graph.num_edges(),
                     "k": len(paths), "outcome": outcome.kind.value, "depth": outcome.depth,
                     "seconds": seconds, "agree": seconds < SCALE_SECONDS})
        logger.info(f"scale #{index}: k={len(paths)} {outcome.kind.value} in {seconds:.2f}s")
    return _result("scale", f"vertex_menger at desk scale under {SCALE_SECONDS:g} s", rows, started, _Tally())


VALIDATORS: Dict[str, Callable[..., dict]] = {
    "grid": validate_grid,
    "edge_counterexample": validate_edge_counterexample,
    "connectivity": validate_connectivity,
    "pathfinder": validate_pathfinder,
    "trails": validate_trails,
    "appendage": validate_appendage,
    "edge_menger": validate_edge_menger,
    "vertex_menger": validate_vertex_menger,
    "directed": validate_directed,
    "scale": validate_scale,
}


def run_full_validation(
    output_dir: str = "output/validation",
    seed: int = DEFAULT_SEED,
    scale: str = "reduced",
    suites: Optional[Sequence[str]] = None,
) -> dict:
    """Run the selected suites (all by default) and write their tables."""
    if scale not in ("reduced", "full"):
        raise ValueError(f"scale must be 'reduced' or 'full', got {scale!r}")
    selected = list(SUITES if suites is None else suites)
    unknown = [s for s in selected if s not in VALIDATORS]
    if unknown:
        raise ValueError(f"Unknown suites {unknown}; choose from {list(SUITES)}")
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)

    results = {}
    for name in selected:
        logging.info(f"Running suite {name} ({scale})...")
        result = VALIDATORS[name](seed=seed, scale=scale)
        save_dataframe(pd.DataFrame(result["rows"]), out / f"{sanitize_filename(name)}.csv")
        results[name] = {k: v for k, v in result.items() if k != "rows"}
        logging.info(f"Suite {name}: {result['verdict']} ({result['seconds']:.1f}s)")

    checked = sum(r["certificates_checked"] for r in results.values())
    failures = [f for r in results.values() for f in r["certificate_failures"]]
    summary = {
        "seed": seed,
        "scale": scale,
        "suites": {name: r["verdict"] for name, r in results.items()},
        "certificates": {
            "checked": checked,
            "failed": len(failures),
            "verdict": "CONFIRMED" if not failures else "NOT CONFIRMED",
        },
        "details": results,
    }
    save_json(summary, out / "validation_summary.json")
    logging.info(f"Validation complete. Results in {out}")
    return summary


def all_confirmed(summary: dict) -> bool:
    return (
        all(v == "CONFIRMED" for v in summary["suites"].values())
        and summary["certificates"]["verdict"] == "CONFIRMED"
    )


if __name__ == "__main__":
    import argparse

    logging.basicConfig(format="%(levelname)s: %(message)s", level=logging.INFO)
    parser = argparse.ArgumentParser(description="Validate the Menger algorithms against oracles")
    parser.add_argument("--output-dir", type=str, default="output/validation")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--scale", choices=["reduced", "full"], default="reduced")
    parser.add_argument("--suite", action="append", choices=list(SUITES))
    args = parser.parse_args()
    run_full_validation(args.output_dir, args.seed, args.scale, args.suite)
