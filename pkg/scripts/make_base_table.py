#!/usr/bin/env python3
"""Regenerate tests/data/base_counts.json: plane and sphere counts for every
minimally rigid graph on up to 7 vertices, keyed by canonical form (hex).

The table lets the property suites run the recursion with a lookup-table base
oracle instead of live algebraic solves.
"""

import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from rigicount.census import rigid_graphs
from rigicount.counting import realisation_count
from rigicount.graphs import canonical_form, encode_integer
from rigicount.solver import Mode, SolverConfig


def main() -> None:
    cfg = SolverConfig()
    table: dict[str, dict] = {}
    memo: dict = {}
    for n in range(2, 8):
        graphs = [g for g in rigid_graphs(n) if g.m == 2 * n - 3]
        t0 = time.time()
        for g in graphs:
            key = canonical_form(g).hex()
            plane = realisation_count(g, Mode.PLANE, cfg, peel=True, memo=memo).value
            sphere = realisation_count(g, Mode.SPHERE, cfg, peel=True, memo=memo).value
            table[key] = {
                "n": n,
                "code": encode_integer(g).value,
                "plane": plane,
                "sphere": sphere,
            }
        print(f"n={n}: {len(graphs)} minimally rigid graphs ({time.time() - t0:.1f}s)")
    out = Path(__file__).resolve().parent.parent / "tests" / "data" / "base_counts.json"
    out.write_text(json.dumps(table, indent=1, sort_keys=True))
    print(f"wrote {out} ({len(table)} graphs)")


if __name__ == "__main__":
    main()
