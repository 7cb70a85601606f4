"""Command-line interface: analyze, count, psd, batch, stats, table, compare.

Vertex labels in all input and output are 1-based; exit code 2 flags a
non-rigid input where a count would be infinite, 1 any other error.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import sys
import time
from pathlib import Path
from typing import Optional

from .census import classify, compare_rows, max_count_entry, stats_row
from .counting import CountResult, psd_completion_count, realisation_count
from .graphs import (
    Graph,
    decode_integer,
    encode_integer,
    find_two_cuts,
    parse_code_line,
    parse_edge_list,
)
from .matroid import find_non_redundant_edge, maximal_rigid_subgraphs
from .solver import DEFAULT_PRIMES, Mode, SolverConfig, direct_count

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFINITE = 2


def _solver_config(args) -> SolverConfig:
    primes = (
        tuple(int(p) for p in args.primes.split(",")) if args.primes else DEFAULT_PRIMES
    )
    return SolverConfig(
        primes=primes,
        seed=args.seed,
        quorum=args.quorum,
        max_resamples=args.resamples,
    )


def _add_solver_flags(sub):
    sub.add_argument("--primes", help="comma-separated primes for the algebraic solver")
    sub.add_argument("--seed", type=int, default=0, help="base random seed")
    sub.add_argument("--quorum", type=int, default=2, help="matching runs required")
    sub.add_argument("--resamples", type=int, default=8, help="resample budget per run")


def _load_graph(spec: str, declared_n: Optional[int]) -> Graph:
    """A graph argument is a decimal integer code or a path to an edge list."""
    if spec.isdigit():
        return decode_integer(parse_code_line(spec if declared_n is None else f"{spec} n={declared_n}"))
    path = Path(spec)
    if not path.exists():
        raise ValueError(f"not an integer code and no such file: {spec}")
    return parse_edge_list(path.read_text())


def _edge_str(e) -> str:
    return f"{{{e[0] + 1},{e[1] + 1}}}"


def _vertex_set_str(vs) -> str:
    return "{" + ",".join(str(v + 1) for v in sorted(vs)) + "}"


def cmd_analyze(args) -> int:
    g = _load_graph(args.graph, args.n)
    c = classify(g)
    cuts = find_two_cuts(g) if g.n >= 4 else []
    report = {
        "n": g.n,
        "m": g.m,
        "rigid": c.rigid,
        "minimally_rigid": c.minimally_rigid,
        "redundantly_rigid": c.redundantly_rigid,
        "globally_rigid": c.globally_rigid,
        "three_connected": c.three_connected,
        "two_cuts": [[u + 1, v + 1] for u, v in ((cc.u, cc.v) for cc in cuts)],
    }
    if c.rigid and not c.redundantly_rigid:
        e = find_non_redundant_edge(g)
        decomposition = maximal_rigid_subgraphs(g.remove_edge(*e))
        report["non_redundant_edge"] = [e[0] + 1, e[1] + 1]
        report["rigid_components_without_edge"] = [
            sorted(v + 1 for v in vs) for vs in decomposition.vertex_sets
        ]
    if args.json:
        print(json.dumps(report, indent=2))
        return EXIT_OK
    print(f"vertices: {report['n']}  edges: {report['m']}")
    for key in (
        "rigid",
        "minimally_rigid",
        "redundantly_rigid",
        "globally_rigid",
        "three_connected",
    ):
        value = report[key]
        shown = "n/a" if value is None else ("yes" if value else "no")
        print(f"{key.replace('_', ' ')}: {shown}")
    if report["two_cuts"]:
        print("2-cuts: " + " ".join(f"{{{u},{v}}}" for u, v in report["two_cuts"]))
    else:
        print("2-cuts: none")
    if "non_redundant_edge" in report:
        u, v = report["non_redundant_edge"]
        print(f"non-redundant edge: {{{u},{v}}}")
        comps = " | ".join(
            "{" + ",".join(map(str, vs)) + "}" for vs in report["rigid_components_without_edge"]
        )
        print(f"rigid components after deleting it: {comps}")
    return EXIT_OK


def cmd_count(args) -> int:
    g = _load_graph(args.graph, args.n)
    cfg = _solver_config(args)
    mode = Mode.parse(args.mode)
    c = classify(g)
    if not c.rigid:
        print("not rigid: infinitely many realisations", file=sys.stderr)
        return EXIT_INFINITE
    trace_dict = None
    if args.method == "algebraic":
        value = direct_count(g, mode, cfg)
    else:
        result: CountResult = realisation_count(g, mode, cfg, peel=args.peel)
        value = result.value
        trace_dict = result.trace.to_dict()
    if args.json:
        payload = {"mode": mode.value, "count": value}
        if args.trace and trace_dict is not None:
            payload["trace"] = trace_dict
        print(json.dumps(payload, indent=2))
    else:
        print(value)
        if args.trace and trace_dict is not None:
            print(json.dumps(trace_dict, indent=2))
    return EXIT_OK


def cmd_psd(args) -> int:
    g = _load_graph(args.graph, args.n)
    cfg = _solver_config(args)
    result = psd_completion_count(g, args.rank, cfg)
    if result.is_infinite:
        print("infinite")
        return EXIT_INFINITE
    print(result.value)
    return EXIT_OK


BATCH_COLUMNS = (
    "id",
    "n",
    "m",
    "rigid",
    "minimally_rigid",
    "redundantly_rigid",
    "globally_rigid",
    "three_connected",
    "has_two_cut",
    "plane_count",
    "sphere_count",
    "plane_ms",
    "sphere_ms",
)


def _parse_batch_line(line: str) -> Graph:
    if "-" in line.split()[0]:
        # inline edge list: 'i-j,i-j,...' with optional 'n=<k>'
        parts = line.split()
        edges = [tuple(int(x) - 1 for x in tok.split("-")) for tok in parts[0].split(",")]
        declared = None
        for tok in parts[1:]:
            if tok.startswith("n="):
                declared = int(tok[2:])
        n = declared if declared else max(max(e) for e in edges) + 1
        return Graph.from_edges(n, edges)
    return decode_integer(parse_code_line(line))


def _batch_record(task) -> list[str]:
    line_no, line, mode_name, cfg = task
    try:
        g = _parse_batch_line(line)
    except Exception as exc:  # report and continue
        return [f"line{line_no}", "error", str(exc)]
    c = classify(g)
    row = {
        "id": line.split()[0],
        "n": g.n,
        "m": g.m,
        "rigid": int(c.rigid),
        "minimally_rigid": int(c.minimally_rigid),
        "redundantly_rigid": int(c.redundantly_rigid),
        "globally_rigid": int(c.globally_rigid),
        "three_connected": "" if c.three_connected is None else int(c.three_connected),
        "has_two_cut": "" if c.has_two_cut is None else int(c.has_two_cut),
        "plane_count": "",
        "sphere_count": "",
        "plane_ms": "",
        "sphere_ms": "",
    }
    if c.rigid:
        memo: dict = {}
        for name in ("plane", "sphere"):
            if mode_name not in (name, "both"):
                continue
            start = time.perf_counter()
            value = realisation_count(g, Mode.parse(name), cfg, memo=memo).value
            row[f"{name}_count"] = value
            row[f"{name}_ms"] = round(1000 * (time.perf_counter() - start), 1)
    return [str(row[col]) for col in BATCH_COLUMNS]


def cmd_batch(args) -> int:
    cfg = _solver_config(args)
    lines = [
        (i, ln.strip())
        for i, ln in enumerate(Path(args.file).read_text().splitlines(), start=1)
        if ln.strip() and not ln.strip().startswith("#")
    ]
    out = open(args.out, "a" if args.resume else "w") if args.out else sys.stdout
    progress_path = Path(args.out + ".progress") if args.out else None
    done = 0
    if args.resume and progress_path and progress_path.exists():
        done = json.loads(progress_path.read_text())["done"]
    todo = lines[done:]
    if done == 0:
        print("\t".join(BATCH_COLUMNS), file=out)
    tasks = [(no, ln, args.mode, cfg) for no, ln in todo]
    if args.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = pool.map(_batch_record, tasks, chunksize=4)
            _write_batch(results, out, progress_path, done)
    else:
        _write_batch(map(_batch_record, tasks), out, progress_path, done)
    if out is not sys.stdout:
        out.close()
    return EXIT_OK


def _write_batch(results, out, progress_path, done) -> None:
    for row in results:
        print("\t".join(row), file=out)
        done += 1
        if progress_path and done % 100 == 0:
            out.flush()
            progress_path.write_text(json.dumps({"done": done}))
    if progress_path:
        progress_path.write_text(json.dumps({"done": done}))


def cmd_stats(args) -> int:
    if args.n >= 9:
        print(f"warning: n={args.n} enumerates a very large census; expect a long run", file=sys.stderr)
    row = stats_row(args.n)
    header = (
        "n",
        "rigid",
        "minimally_rigid",
        "globally_rigid",
        "redundantly_rigid",
        "with_two_cut",
        "decomposition_only",
    )
    values = (row.n,) + row.as_tuple()
    if args.json:
        print(json.dumps(dict(zip(header, values))))
    else:
        print("\t".join(header))
        print("\t".join(map(str, values)))
    return EXIT_OK


def cmd_table(args) -> int:
    if args.n >= 8:
        print(f"warning: n={args.n} is beyond the intended desk scale", file=sys.stderr)
    cfg = _solver_config(args)
    entry = max_count_entry(args.n, args.k, Mode.parse(args.mode), cfg, peel=args.peel)
    # a printed certificate must re-verify
    check = realisation_count(decode_integer(parse_code_line(str(entry.certificate))), entry.mode, cfg).value
    if check != entry.maximum:
        print("internal error: certificate failed re-verification", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        print(
            json.dumps(
                {
                    "n": entry.n,
                    "k": entry.k,
                    "mode": entry.mode.value,
                    "max_count": entry.maximum,
                    "certificate": entry.certificate,
                    "rigid_graphs": entry.graph_count,
                }
            )
        )
    else:
        print(f"max count over rigid graphs with n={entry.n}, m=2n-3+{entry.k}: {entry.maximum}")
        print(f"certificate code: {entry.certificate} (re-verified)")
    return EXIT_OK


def cmd_compare(args) -> int:
    cfg = _solver_config(args)
    rows = compare_rows(args.n, cfg)
    out = open(args.out, "w") if args.out else sys.stdout
    print("c2,c2_sphere,count", file=out)
    for c2, c2s, freq in rows:
        print(f"{c2},{c2s},{freq}", file=out)
    if out is not sys.stdout:
        out.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rigicount",
        description="Exact realisation counts for rigid graphs in the plane and on the sphere.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph_arg(p):
        p.add_argument("graph", help="integer code or path to an edge-list file")
        p.add_argument("--n", type=int, help="declared vertex count for integer codes")

    p = sub.add_parser("analyze", help="classification report for one graph")
    add_graph_arg(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("count", help="realisation count of a rigid graph")
    add_graph_arg(p)
    p.add_argument("--mode", choices=["plane", "sphere"], default="plane")
    p.add_argument("--method", choices=["auto", "recursive", "algebraic"], default="auto")
    p.add_argument("--trace", action="store_true", help="dump the derivation tree as JSON")
    p.add_argument("--peel", action="store_true", help="peel degree-2 vertices first")
    p.add_argument("--json", action="store_true")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("psd", help="complex completions of a generic partial matrix")
    add_graph_arg(p)
    p.add_argument("--rank", type=int, required=True, choices=[1, 2, 3])
    p.add_argument("--json", action="store_true")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_psd)

    p = sub.add_parser("batch", help="process a file of graphs into TSV records")
    p.add_argument("file")
    p.add_argument("--mode", choices=["plane", "sphere", "both"], default="plane")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="output TSV path (enables checkpointing)")
    p.add_argument("--resume", action="store_true", help="continue from the checkpoint")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("stats", help="classification counts over all graphs on n vertices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("table", help="maximal count over rigid graphs with 2n-3+k edges")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=["plane", "sphere"], default="plane")
    p.add_argument("--no-peel", dest="peel", action="store_false")
    p.add_argument("--json", action="store_true")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("compare", help="plane vs sphere counts over rigid graphs on n vertices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", help="CSV output path (default stdout)")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
