#!/usr/bin/env python3
"""Write the fixture corpus and small grids as bgf documents.

Usage:
    python scripts/export_fixtures.py [--output-dir data/fixtures]
"""

import argparse
import logging
from pathlib import Path

from bidimenger.io.bgf import document, write_document
from bidimenger.lab.fixtures import fixtures
from bidimenger.lab.generators import gen_grid
from bidimenger.sanitize import sanitize_filename

logging.basicConfig(format="%(levelname)s: %(message)s", level=logging.INFO)
logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent.parent / "data" / "fixtures"


def export(output_dir: Path, max_grid: int = 1) -> list:
    written = []
    for name, fixture in sorted(fixtures().items()):
        sets = {}
        if fixture.sources:
            sets["X"] = fixture.sources
        if fixture.targets:
            sets["Y"] = fixture.targets
        path = output_dir / f"{sanitize_filename(name.lower())}.bgf"
        write_document(document(fixture.graph, sets, fixture.paths), path)
        written.append(path)
    for k in range(1, max_grid + 1):
        graph, sources, targets = gen_grid(k)
        path = output_dir / f"grid{k}.bgf"
        write_document(document(graph, {"X": sources, "Y": targets}), path)
        written.append(path)
    for path in written:
        logger.info(f"Wrote {path}")
    return written


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Export fixture documents")
    parser.add_argument("--output-dir", type=str, default=str(DATA_DIR))
    parser.add_argument("--max-grid", type=int, default=1)
    args = parser.parse_args()
    export(Path(args.output_dir), args.max_grid)
