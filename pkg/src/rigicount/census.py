"""Exhaustive small-n surveys: classification tables, maxima, plane/sphere data.

Graphs are enumerated up to isomorphism by vertex augmentation with canonical
dedup, so everything here is sized for small vertex counts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .counting import realisation_count
from .graphs import Graph, encode_integer, nonisomorphic_graphs
from .matroid import (
    is_3connected,
    is_minimally_rigid,
    is_redundantly_rigid,
    is_rigid,
    rank,
)
from .solver import Mode, SolverConfig


@dataclass(frozen=True)
class Classification:
    rigid: bool
    minimally_rigid: bool
    redundantly_rigid: bool
    globally_rigid: bool
    three_connected: Optional[bool]  # None when n < 4
    has_two_cut: Optional[bool]  # only meaningful for rigid graphs


def classify(g: Graph) -> Classification:
    rigid = is_rigid(g) if g.n >= 2 else False
    minimally = rigid and g.m == 2 * g.n - 3
    redundantly = rigid and is_redundantly_rigid(g)
    three_connected = is_3connected(g) if g.n >= 4 else None
    if g.n <= 3:
        globally = g.m == g.n * (g.n - 1) // 2 and g.n >= 2
        has_cut = False if rigid else None
    else:
        globally = bool(three_connected) and redundantly
        has_cut = (not three_connected) if rigid else None
    return Classification(rigid, minimally, redundantly, globally, three_connected, has_cut)


@dataclass(frozen=True)
class StatsRow:
    n: int
    rigid: int
    minimally_rigid: int
    globally_rigid: int
    redundantly_rigid: int
    with_two_cut: int
    decomposition_only: int  # rigid, not minimally/redundantly rigid, 3-connected

    def as_tuple(self) -> tuple[int, ...]:
        return (
            self.rigid,
            self.minimally_rigid,
            self.globally_rigid,
            self.redundantly_rigid,
            self.with_two_cut,
            self.decomposition_only,
        )


def stats_row(n: int) -> StatsRow:
    """One row of the classification survey over all graphs on n vertices."""
    if n < 4:
        raise ValueError("survey rows need n >= 4")
    rigid = minimally = globally = redundantly = with_cut = deco = 0
    for g in nonisomorphic_graphs(n):
        if rank(g).rank != 2 * n - 3:
            continue
        c = classify(g)
        rigid += 1
        minimally += c.minimally_rigid
        globally += c.globally_rigid
        redundantly += c.redundantly_rigid
        with_cut += bool(c.has_two_cut)
        deco += (
            not c.minimally_rigid and not c.redundantly_rigid and bool(c.three_connected)
        )
    return StatsRow(n, rigid, minimally, globally, redundantly, with_cut, deco)


def rigid_graphs(n: int, edge_count: Optional[int] = None) -> list[Graph]:
    out = []
    for g in nonisomorphic_graphs(n):
        if edge_count is not None and g.m != edge_count:
            continue
        if is_rigid(g):
            out.append(g)
    return out


@dataclass(frozen=True)
class TableEntry:
    n: int
    k: int
    mode: Mode
    maximum: int
    certificate: int  # integer code of an attaining graph
    graph_count: int


def max_count_entry(
    n: int,
    k: int,
    mode: Mode,
    cfg: Optional[SolverConfig] = None,
    *,
    memo: Optional[dict] = None,
    peel: bool = True,
) -> TableEntry:
    """Maximum count over rigid graphs with 2n-3+k edges, with a certificate."""
    if k < 0:
        raise ValueError("k must be non-negative")
    memo = {} if memo is None else memo
    graphs = rigid_graphs(n, 2 * n - 3 + k)
    if not graphs:
        raise ValueError(f"no rigid graphs with n={n}, k={k}")
    best = None
    best_graph = None
    for g in graphs:
        value = realisation_count(g, mode, cfg, peel=peel, memo=memo).value
        if best is None or value > best:
            best = value
            best_graph = g
    return TableEntry(n, k, mode, best, encode_integer(best_graph).value, len(graphs))


def compare_rows(
    n: int,
    cfg: Optional[SolverConfig] = None,
    *,
    memo: Optional[dict] = None,
    peel: bool = True,
) -> list[tuple[int, int, int]]:
    """(plane count, sphere count, frequency) over all rigid graphs on n vertices."""
    memo = {} if memo is None else memo
    pairs: Counter = Counter()
    for g in rigid_graphs(n):
        plane = realisation_count(g, Mode.PLANE, cfg, peel=peel, memo=memo).value
        sphere = realisation_count(g, Mode.SPHERE, cfg, peel=peel, memo=memo).value
        pairs[(plane, sphere)] += 1
    return [(c2, c2s, freq) for (c2, c2s), freq in sorted(pairs.items())]
