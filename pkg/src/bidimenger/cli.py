"""Command-line interface for bidirected path finding and Menger augmentation.

Exit codes: 0 for a positive answer (paths found, property holds), 1 for a negative
one (separator, no path, property fails), 2 when a theorem precondition fails and
3 for usage and input errors. Certificates go to standard output, logs to
standard error.
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .analysis.appendage import compute_appendage
from .analysis.connectivity import circular_decomposition, cycle_through_edge, is_strongly_connected
from .analysis.menger_edge import edge_menger
from .analysis.menger_vertex import find_set_path, vertex_menger
from .analysis.pathfinder import find_clean_witness, find_closed_trail, find_signed_path, find_signed_trail
from .errors import BidirectedError, ContractError, InternalError, PreconditionError
from .graph.core import Walk
from .io.bgf import GraphDocument, document, parse_signed_vertex, read_document, serialize
from .io.certificates import (
    Certificate,
    Outcome,
    PathWitness,
    Query,
    check_certificate,
    edge_menger_certificate,
    make_certificate,
    path_witness,
    signed_path_certificate,
    vertex_menger_certificate,
)
from .lab.generators import DEFAULT_SEED, gen_edge_counterexample, gen_grid, random_bidirected
from .lab.oracles import OracleMode, brute_menger
from .validate_theorems import SUITES, all_confirmed, run_full_validation

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PRECONDITION = 2
EXIT_USAGE = 3

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with the usage code instead of 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Timer:
    def __init__(self) -> None:
        self.timings: Dict[str, float] = {}

    def run(self, phase: str, fn, *args, **kwargs):
        tick = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            self.timings[phase] = round(time.perf_counter() - tick, 6)


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def _text(cert: Certificate) -> str:
    lines = [f"{cert.query.command}: {cert.outcome.value}"]
    for i, p in enumerate(cert.paths, start=1):
        lines.append(f"  path {i}: {' '.join(p.sequence)}")
    if cert.separator is not None:
        lines.append(f"  separator: {' '.join(cert.separator) or '(empty)'}")
    if cert.edges is not None:
        lines.append(f"  edges: {' '.join(cert.edges) or '(none)'}")
    if cert.components is not None:
        for i, c in enumerate(cert.components, start=1):
            lines.append(f"  component {i}: {' '.join(c)}")
    if cert.strongly_connected is not None:
        lines.append(f"  strongly connected: {str(cert.strongly_connected).lower()}")
    if cert.provenance.timings:
        spent = ", ".join(f"{k}={v:.6f}s" for k, v in cert.provenance.timings.items())
        lines.append(f"  timings: {spent}")
    return "\n".join(lines)


def _emit(args, cert: Certificate) -> int:
    if not args.timings:
        cert.provenance.timings = None
    print(cert.to_json() if args.json else _text(cert))
    return cert.outcome.exit_code


def _precondition(args, graph, error: PreconditionError) -> int:
    witness: Optional[PathWitness] = None
    if isinstance(error.witness, Walk):
        witness = path_witness(graph, error.witness)
    if args.json:
        payload = {"error": "precondition", "message": str(error)}
        if witness is not None:
            payload["witness"] = witness.model_dump()
        print(json.dumps(payload, indent=2))
    else:
        print(f"precondition failed: {error}")
        if witness is not None:
            print(f"  witness: {' '.join(witness.sequence)}")
    return EXIT_PRECONDITION


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _load(args) -> GraphDocument:
    if not args.graph:
        raise ContractError("--graph is required")
    return read_document(Path(args.graph))


def _prescribed(args, doc: GraphDocument) -> List[Walk]:
    if args.paths:
        return read_document(Path(args.paths)).path_list()
    return doc.path_list()


def _require(value, flag: str):
    if value is None:
        raise ContractError(f"{flag} is required")
    return value


def cmd_paths(args, doc: GraphDocument, timer: _Timer) -> int:
    graph = doc.graph
    if args.x is not None:
        xs, ys = doc.signed_set(args.x), doc.signed_set(_require(args.y, "--y"))
        found = timer.run("find_set_path", find_set_path, graph, xs, ys)
        cert = make_certificate(
            graph,
            Query(command="paths", x_set=args.x, y_set=args.y),
            Outcome.ABSENT if found is None else Outcome.FOUND,
            "find_set_path",
            paths=() if found is None else (found,),
            timings=timer.timings,
        )
        return _emit(args, cert)
    source = parse_signed_vertex(_require(args.source, "--from"))
    target = parse_signed_vertex(_require(args.target, "--to"))
    found = timer.run("find_signed_path", find_signed_path, graph, source, target)
    cert = signed_path_certificate(graph, source, target, found)
    cert.provenance.timings = timer.timings
    return _emit(args, cert)


def cmd_trail(args, doc: GraphDocument, timer: _Timer) -> int:
    graph = doc.graph
    source = parse_signed_vertex(_require(args.source, "--from"))
    target = parse_signed_vertex(_require(args.target, "--to"))
    found = timer.run("find_signed_trail", find_signed_trail, graph, source, target)
    cert = signed_path_certificate(graph, source, target, found, trail=True)
    cert.provenance.timings = timer.timings
    return _emit(args, cert)


def cmd_clean(args, doc: GraphDocument, timer: _Timer) -> int:
    name = _require(args.x, "--x")
    witness = timer.run("find_clean_witness", find_clean_witness, doc.graph, doc.signed_set(name))
    cert = make_certificate(
        doc.graph,
        Query(command="clean", x_set=name),
        Outcome.TRUE if witness is None else Outcome.FALSE,
        "find_clean_witness",
        paths=() if witness is None else (witness,),
        timings=timer.timings,
    )
    return _emit(args, cert)


def cmd_edge_clean(args, doc: GraphDocument, timer: _Timer) -> int:
    x = _require(args.x, "--x")
    witness = timer.run("find_closed_trail", find_closed_trail, doc.graph, x)
    cert = make_certificate(
        doc.graph,
        Query(command="edge-clean", x=x),
        Outcome.TRUE if witness is None else Outcome.FALSE,
        "find_closed_trail",
        paths=() if witness is None else (witness,),
        timings=timer.timings,
    )
    return _emit(args, cert)


def cmd_connectivity(args, doc: GraphDocument, timer: _Timer) -> int:
    graph = doc.graph
    decomposition = timer.run("circular_decomposition", circular_decomposition, graph)
    strong = timer.run("is_strongly_connected", is_strongly_connected, graph)
    cycles = []
    covered: set = set()
    for e in sorted(decomposition.cycle_edges):
        if e in covered:
            continue
        cycle = cycle_through_edge(graph, e)
        cycles.append(cycle)
        covered |= cycle.edge_set()
    cert = make_certificate(
        graph,
        Query(command="connectivity"),
        Outcome.TRUE if len(decomposition.components) <= 1 else Outcome.FALSE,
        "circular_decomposition",
        paths=cycles,
        timings=timer.timings,
        edges=sorted(decomposition.cycle_edges),
        components=[sorted(c) for c in decomposition.components],
        strongly_connected=strong,
    )
    return _emit(args, cert)


def cmd_appendage(args, doc: GraphDocument, timer: _Timer) -> int:
    anchor = _require(args.x, "--x")
    paths = _prescribed(args, doc)
    if len(paths) != 1:
        raise ContractError(f"appendage needs exactly one path, got {len(paths)}")
    path = paths[0]
    appendage = timer.run("compute_appendage", compute_appendage, doc.graph, path, anchor)
    cert = make_certificate(
        doc.graph,
        Query(command="appendage", x=anchor, prescribed=[path_witness(doc.graph, path)]),
        Outcome.APPENDAGE,
        "compute_appendage",
        timings=timer.timings,
        edges=sorted(appendage.edges),
    )
    return _emit(args, cert)


def cmd_menger_edge(args, doc: GraphDocument, timer: _Timer) -> int:
    x, y = _require(args.x, "--x"), _require(args.y, "--y")
    paths = _prescribed(args, doc)
    outcome = timer.run(
        "edge_menger", edge_menger, doc.graph, x, y, paths,
        check_precondition=not args.no_precondition_check,
    )
    return _emit(args, edge_menger_certificate(doc.graph, x, y, paths, outcome, timer.timings))


def cmd_menger_vertex(args, doc: GraphDocument, timer: _Timer) -> int:
    x_name, y_name = _require(args.x, "--x"), _require(args.y, "--y")
    xs, ys = doc.signed_set(x_name), doc.signed_set(y_name)
    paths = _prescribed(args, doc)
    outcome = timer.run(
        "vertex_menger", vertex_menger, doc.graph, xs, ys, paths,
        check_precondition=not args.no_precondition_check,
    )
    return _emit(
        args, vertex_menger_certificate(doc.graph, x_name, y_name, paths, outcome, timer.timings)
    )


def cmd_gen(args) -> int:
    if args.family == "grid":
        graph, sources, targets = gen_grid(args.k)
        doc = document(graph, {"X": sources, "Y": targets})
        header = f"# grid with k={args.k}"
    elif args.family == "edge-counterexample":
        graph, x, y = gen_edge_counterexample(args.k)
        doc = document(graph)
        header = f"# split grid with k={args.k}, terminals {x} {y}"
    else:
        graph = random_bidirected(args.n, args.m, args.seed)
        doc = document(graph)
        header = f"# random graph n={args.n} m={args.m} seed={args.seed}"
    text = serialize(doc)
    text = text.replace("\n", f"\n{header}\n", 1)
    if args.output:
        Path(args.output).write_text(text)
        logger.info(f"Wrote {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.suite:
        suites = list(SUITES) if "all" in args.suite else args.suite
        summary = run_full_validation(args.output_dir, args.seed, args.scale, suites)
        for name, verdict in summary["suites"].items():
            print(f"{name}: {verdict}")
        certs = summary["certificates"]
        print(f"certificates: {certs['checked']} checked, {certs['failed']} failed")
        return EXIT_OK if all_confirmed(summary) else EXIT_NEGATIVE
    doc = _load(args)
    x, y = _require(args.x, "--x"), _require(args.y, "--y")
    if args.mode == "edge":
        report = brute_menger(doc.graph, x, y, OracleMode.EDGE)
    else:
        report = brute_menger(doc.graph, doc.signed_set(x), doc.signed_set(y), OracleMode.VERTEX)
    print(f"oracle[{report.mode.value}]: {report.path_count} paths")
    print(f"  max disjoint: {report.max_disjoint}")
    print(f"  min separator: {report.min_separator}")
    for i, p in enumerate(report.family, start=1):
        print(f"  path {i}: {p}")
    if report.separator is not None:
        print(f"  separator: {' '.join(sorted(report.separator)) or '(empty)'}")
    return EXIT_OK


def cmd_check(args, doc: GraphDocument) -> int:
    text = sys.stdin.read() if args.certificate in (None, "-") else Path(args.certificate).read_text()
    try:
        cert = Certificate.from_json(text)
    except ValueError as e:
        raise ContractError(f"Invalid certificate: {e}") from e
    result = check_certificate(doc, cert)
    for problem in result.problems:
        print(f"problem: {problem}")
    for skipped in result.skipped:
        print(f"skipped: {skipped}")
    print("valid" if result.valid else "invalid")
    return EXIT_OK if result.valid else EXIT_NEGATIVE


COMMANDS = {
    "paths": cmd_paths,
    "trail": cmd_trail,
    "clean": cmd_clean,
    "edge-clean": cmd_edge_clean,
    "connectivity": cmd_connectivity,
    "appendage": cmd_appendage,
    "menger-edge": cmd_menger_edge,
    "menger-vertex": cmd_menger_vertex,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bidimenger", description="Menger theory for bidirected graphs")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true")
    verbosity.add_argument("--quiet", "-q", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    common = _Parser(add_help=False)
    common.add_argument("--graph", type=str, help="bgf document")
    common.add_argument("--json", action="store_true", help="emit the JSON certificate")
    common.add_argument("--timings", action="store_true", help="record timings in the certificate")

    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--from", dest="source", type=str, help="signed start, e.g. v:+")
        p.add_argument("--to", dest="target", type=str, help="signed end, e.g. w:-")
        p.add_argument("--x", type=str, help="vertex or set name")
        p.add_argument("--y", type=str, help="vertex or set name")
        p.add_argument("--paths", type=str, help="bgf document whose path lines are the input paths")
        p.add_argument("--no-precondition-check", action="store_true")

    gen = sub.add_parser("gen")
    gen.add_argument("family", choices=["grid", "edge-counterexample", "random"])
    gen.add_argument("--k", type=int, default=1)
    gen.add_argument("--n", type=int, default=6)
    gen.add_argument("--m", type=int, default=9)
    gen.add_argument("--seed", type=int, default=DEFAULT_SEED)
    gen.add_argument("--output", type=str)

    oracle = sub.add_parser("oracle", parents=[common])
    oracle.add_argument("--suite", action="append", choices=["all", *SUITES])
    oracle.add_argument("--scale", choices=["reduced", "full"], default="reduced")
    oracle.add_argument("--seed", type=int, default=DEFAULT_SEED)
    oracle.add_argument("--output-dir", type=str, default="output/validation")
    oracle.add_argument("--x", type=str)
    oracle.add_argument("--y", type=str)
    oracle.add_argument("--mode", choices=["vertex", "edge"], default="vertex")

    check = sub.add_parser("check", parents=[common])
    check.add_argument("--certificate", type=str, help="certificate JSON file, '-' for stdin")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(format="%(levelname)s: %(message)s", level=level, stream=sys.stderr)
    logging.getLogger().setLevel(level)

    doc: Optional[GraphDocument] = None
    try:
        if args.command == "gen":
            return cmd_gen(args)
        if args.command == "oracle":
            return cmd_oracle(args)
        doc = _load(args)
        if args.command == "check":
            return cmd_check(args, doc)
        return COMMANDS[args.command](args, doc, _Timer())
    except InternalError:
        raise
    except PreconditionError as e:
        return _precondition(args, doc.graph if doc else None, e)
    except (BidirectedError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    """Console entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
