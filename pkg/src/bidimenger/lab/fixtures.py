"""Named small instances with hand-checkable answers."""

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from ..graph.core import BidirectedGraph, Sign, SignedVertex, SignedVertexSet, Walk, make_graph


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: BidirectedGraph
    sources: SignedVertexSet = frozenset()
    targets: SignedVertexSet = frozenset()
    x: Optional[str] = None
    y: Optional[str] = None
    paths: Tuple[Walk, ...] = field(default_factory=tuple)
    description: str = ""


def _members(*pairs: Tuple[str, str]) -> SignedVertexSet:
    return frozenset(SignedVertex(v, Sign.parse(s)) for v, s in pairs)


def fixtures() -> Dict[str, Fixture]:
    """F_EDGE, F_PATH2, F_NOPATH, F_SIGNED_START, F_EXT and F_TRAIL_ONLY by name."""
    edge = make_graph(["u", "w"], [("e", "u", "-", "w", "+")])
    path2 = make_graph(["u", "v", "w"], [("e1", "u", "-", "v", "+"), ("e2", "v", "-", "w", "+")])
    nopath = make_graph(["u", "v", "w"], [("e1", "u", "-", "v", "+"), ("e2", "v", "+", "w", "+")])
    signed_start = make_graph(
        ["x1", "x2", "y1", "y2"],
        [
            ("x1y1", "x1", "-", "y1", "+"),
            ("x1y2", "x1", "+", "y2", "-"),
            ("x2y2", "x2", "+", "y2", "-"),
        ],
    )
    ext = make_graph(
        ["x'", "a1", "a2", "a3", "a4", "x"],
        [(f"x'a{i}", "x'", "-", f"a{i}", "+") for i in range(1, 5)]
        + [(f"a{i}x", f"a{i}", "-", "x", "+") for i in range(1, 5)],
    )
    trail_only = make_graph(
        ["u", "m", "p", "q", "w"],
        [
            ("um", "u", "-", "m", "+"),
            ("mp", "m", "-", "p", "+"),
            ("pq", "p", "-", "q", "+"),
            ("qm", "q", "-", "m", "-"),
            ("mw", "m", "+", "w", "-"),
        ],
    )
    corpus = [
        Fixture("F_EDGE", edge, _members(("u", "-")), _members(("w", "+")), "u", "w",
                description="a single edge u- w+"),
        Fixture("F_PATH2", path2, _members(("u", "-")), _members(("w", "+")), "u", "w",
                description="an alternating path of two edges"),
        Fixture("F_NOPATH", nopath, _members(("u", "-")), _members(("w", "+")), "u", "w",
                description="two edges meeting with equal signs at v"),
        Fixture(
            "F_SIGNED_START",
            signed_start,
            _members(("x1", "+"), ("x1", "-"), ("x2", "+")),
            _members(("y1", "+"), ("y2", "-")),
            paths=(Walk(("x1", "y2"), ("x1y2",)),),
            description="two disjoint X-Y paths exist, but no such pair starts one path in (x1,+)",
        ),
        Fixture("F_EXT", ext, x="x'", y="x",
                description="no x'-x' path, yet no three edges separate x' from x"),
        Fixture("F_TRAIL_ONLY", trail_only, _members(("u", "-")), _members(("w", "-")), "u", "w",
                description="a u-w trail through an unbalanced triangle but no u-w path"),
    ]
    return {f.name: f for f in corpus}
