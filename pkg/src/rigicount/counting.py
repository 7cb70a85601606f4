"""Recursive realisation counting for rigid graphs.

Dispatch order for a rigid graph: globally rigid graphs count 1; an optional
degree-2 peel halves the problem; minimally rigid graphs go to the algebraic
base counter; a non-redundant edge triggers the decomposition formula

    count(G) = count(H) * prod_i count(G_i) / prod_i count(H_i)

over the maximal rigid subgraphs G_i of G - e and their minimally rigid
spanning subgraphs H_i (with H = union of the H_i plus e); otherwise the
graph has a 2-cut {u,v} and splits as

    count(G) = 2 * count(K') * count(L')

where K', L' are the two sides with the cut pair joined by an edge (the side
that is already rigid keeps its edge set when {u,v} is not an edge).

Every division is exact and asserted; results carry a replayable derivation
trace and are memoized on (canonical form, mode).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import solver
from .graphs import (
    Cut2,
    Edge,
    Graph,
    biconnected_component_count,
    canonical_form,
    find_two_cuts,
    is_connected,
    split_at_cut,
)
from .matroid import (
    is_minimally_rigid,
    is_globally_rigid,
    is_rigid,
    maximal_rigid_subgraphs,
    minimally_rigid_spanning_subgraph,
    rank,
)
from .solver import Mode, SolverConfig

BaseOracle = Callable[[Graph, Mode, Optional[SolverConfig]], int]


class CountingError(RuntimeError):
    """An internal invariant of the recursion failed (indicates a bug)."""


@dataclass(frozen=True)
class TraceNode:
    rule: str  # GloballyRigid | BaseSolver | NonRedundant | TwoCut | DegreeTwoPeel
    value: int
    detail: dict = field(default_factory=dict)
    children: tuple["TraceNode", ...] = ()

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "value": self.value,
            "detail": _jsonable(self.detail),
            "children": [c.to_dict() for c in self.children],
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, frozenset):
        return sorted(obj)
    return obj


@dataclass(frozen=True)
class CountResult:
    value: int
    trace: TraceNode


def replay_trace(node: TraceNode) -> int:
    """Re-evaluate the derivation arithmetic; must reproduce node.value."""
    if node.rule == "GloballyRigid":
        return 1
    if node.rule == "BaseSolver":
        return node.value
    if node.rule == "DegreeTwoPeel":
        return 2 * replay_trace(node.children[0])
    if node.rule == "NonRedundant":
        h = replay_trace(node.children[0])
        parts = node.children[1:]
        numerator = math.prod(replay_trace(c) for c in parts[0::2])
        denominator = math.prod(replay_trace(c) for c in parts[1::2])
        if h % denominator:
            raise CountingError("trace divisibility failed on replay")
        return h // denominator * numerator
    if node.rule == "TwoCut":
        return 2 * replay_trace(node.children[0]) * replay_trace(node.children[1])
    raise CountingError(f"unknown trace rule {node.rule}")


def realisation_count(
    g: Graph,
    mode: Mode = Mode.PLANE,
    cfg: Optional[SolverConfig] = None,
    *,
    base_oracle: Optional[BaseOracle] = None,
    peel: bool = False,
    memo: Optional[dict] = None,
    edge_picker: Optional[Callable[[Graph, list[Edge]], Edge]] = None,
    cut_picker: Optional[Callable[[Graph, list[Cut2]], Cut2]] = None,
    spanning_edge_order: Optional[Callable[[Graph], Sequence[Edge]]] = None,
) -> CountResult:
    """Exact realisation count of a rigid graph in the requested mode.

    The optional hooks override the lexicographic choices of the non-redundant
    edge, the 2-cut, and the greedy spanning-subgraph edge order; the result
    value is independent of all of them.
    """
    if not is_rigid(g):
        raise ValueError("input graph is not rigid; the count is infinite")
    oracle = base_oracle if base_oracle is not None else solver.base_count
    memo = {} if memo is None else memo

    def count(h: Graph) -> CountResult:
        key = (canonical_form(h), mode)
        hit = memo.get(key)
        if hit is not None:
            return hit
        result = _dispatch(h)
        if result.value < 1:
            raise CountingError(f"non-positive count {result.value}")
        if replay_trace(result.trace) != result.value:
            raise CountingError("trace replay mismatch")
        memo[key] = result
        return result

    def _dispatch(h: Graph) -> CountResult:
        if is_globally_rigid(h):
            return CountResult(1, TraceNode("GloballyRigid", 1, {"n": h.n}))
        if peel and h.n >= 4:
            degs = h.degrees()
            if 2 in degs:
                v = degs.index(2)
                child = count(h.remove_vertex(v))
                return CountResult(
                    2 * child.value,
                    TraceNode("DegreeTwoPeel", 2 * child.value, {"vertex": v}, (child.trace,)),
                )
        if is_minimally_rigid(h):
            value = oracle(h, mode, cfg)
            return CountResult(value, TraceNode("BaseSolver", value, {"n": h.n, "m": h.m}))
        e = _pick_edge(h)
        if e is not None:
            return _non_redundant(h, e)
        return _two_cut(h)

    def _pick_edge(h: Graph) -> Optional[Edge]:
        target = 2 * h.n - 3
        candidates = [e for e in h.edge_list() if rank(h.remove_edge(*e)).rank < target]
        if not candidates:
            return None
        return edge_picker(h, candidates) if edge_picker else candidates[0]

    def _non_redundant(h: Graph, e: Edge) -> CountResult:
        reduced = h.remove_edge(*e)
        decomposition = maximal_rigid_subgraphs(reduced)
        merged_edges: set[Edge] = {e}
        spanning: list[Graph] = []
        for vs, comp in zip(decomposition.vertex_sets, decomposition.components):
            order = spanning_edge_order(comp) if spanning_edge_order else None
            sub = minimally_rigid_spanning_subgraph(comp, order)
            spanning.append(sub)
            for a, b in sub.edges:
                merged_edges.add((vs[a], vs[b]) if vs[a] < vs[b] else (vs[b], vs[a]))
        merged = Graph.from_edges(h.n, merged_edges)
        if not is_minimally_rigid(merged):
            raise CountingError("merged spanning subgraph is not minimally rigid")
        r_merged = count(merged)
        children = [r_merged]
        numerator = 1
        denominator = 1
        for comp, sub in zip(decomposition.components, spanning):
            r_comp = count(comp)
            r_sub = count(sub)
            children.extend((r_comp, r_sub))
            numerator *= r_comp.value
            denominator *= r_sub.value
        if r_merged.value % denominator:
            raise CountingError(
                f"divisibility failed: {r_merged.value} not divisible by {denominator}"
            )
        value = r_merged.value // denominator * numerator
        node = TraceNode(
            "NonRedundant",
            value,
            {"edge": e, "components": decomposition.vertex_sets},
            tuple(c.trace for c in children),
        )
        return CountResult(value, node)

    def _two_cut(h: Graph) -> CountResult:
        cuts = find_two_cuts(h)
        if not cuts:
            raise CountingError("no counting rule applies (rigid, but no 2-cut found)")
        cut = cut_picker(h, cuts) if cut_picker else cuts[0]
        side_k, side_l = split_at_cut(h, cut)
        u, v = cut.u, cut.v
        pos_k = _pair_positions(cut.sides[0] | {u, v}, u, v)
        pos_l = _pair_positions(cut.sides[1] | {u, v}, u, v)
        has_edge = h.has_edge(u, v)
        k_rigid = is_rigid(side_k)
        l_rigid = is_rigid(side_l)
        if has_edge or (k_rigid and l_rigid):
            case = "cut pair joined or both sides rigid"
            first = _with_edge(side_k, pos_k)
            second = _with_edge(side_l, pos_l)
        elif k_rigid != l_rigid:
            case = "one side rigid"
            if k_rigid:
                first, second = side_k, _with_edge(side_l, pos_l)
            else:
                first, second = side_l, _with_edge(side_k, pos_k)
        else:
            raise CountingError("2-cut with both sides flexible on a rigid graph")
        r1 = count(first)
        r2 = count(second)
        value = 2 * r1.value * r2.value
        node = TraceNode(
            "TwoCut",
            value,
            {"cut": (u, v), "case": case},
            (r1.trace, r2.trace),
        )
        return CountResult(value, node)

    return count(g)


def _pair_positions(vertices: set[int], u: int, v: int) -> tuple[int, int]:
    ordered = sorted(vertices)
    return ordered.index(u), ordered.index(v)


def _with_edge(g: Graph, pos: tuple[int, int]) -> Graph:
    a, b = pos
    return g if g.has_edge(a, b) else g.add_edge(a, b)


def peel_degree2(g: Graph) -> tuple[Graph, int]:
    """Remove one degree-2 vertex of a rigid graph; the count doubles.

    Requires at least four vertices: peeling the triangle would pair the two
    mirror placements of the removed vertex, which the count already
    identifies.
    """
    if not is_rigid(g):
        raise ValueError("input must be rigid")
    if g.n < 4:
        raise ValueError("peeling needs at least four vertices")
    degs = g.degrees()
    if 2 not in degs:
        raise ValueError("no degree-2 vertex to peel")
    return g.remove_vertex(degs.index(2)), 2


@dataclass(frozen=True)
class PsdResult:
    """Completion count of a generic partial matrix: finite value or infinite."""

    value: Optional[int]

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    @classmethod
    def finite(cls, value: int) -> "PsdResult":
        return cls(value)

    @classmethod
    def infinite(cls) -> "PsdResult":
        return cls(None)


def psd_completion_count(
    g: Graph,
    r: int,
    cfg: Optional[SolverConfig] = None,
    *,
    base_oracle: Optional[BaseOracle] = None,
    memo: Optional[dict] = None,
) -> PsdResult:
    """Complex completions of a generic rank-r partial PSD matrix on g."""
    if r not in (1, 2, 3):
        raise ValueError("rank must be 1, 2 or 3")
    if g.n == 1:
        return PsdResult.finite(1)  # the partial matrix is already complete
    if r == 1:
        return PsdResult.finite(1)
    if r == 2:
        if not is_connected(g):
            raise ValueError("rank-2 counting requires a connected graph")
        blocks = biconnected_component_count(g)
        return PsdResult.finite(1 << (blocks - 1))
    if not is_rigid(g):
        return PsdResult.infinite()
    result = realisation_count(g, Mode.SPHERE, cfg, base_oracle=base_oracle, memo=memo)
    return PsdResult.finite(result.value)


def fan_lower_bound(n: int, seed_count: int, seed_vertices: int) -> int:
    """Lower bound for the maximal count from gluing copies of a seed graph."""
    if n < 4:
        raise ValueError("bound needs n >= 4")
    if seed_vertices <= 4:
        raise ValueError("seed graph must have more than four vertices")
    q, rem = divmod(n - 4, seed_vertices - 4)
    return (1 << rem) * seed_count**q


def fan_lower_bound_k1(n: int) -> int:
    """Specialization to the best known 12-vertex seed with count 1216."""
    return fan_lower_bound(n, 1216, 12)


def growth_base(seed_count: int, seed_excess_vertices: int) -> float:
    """Per-vertex growth factor seed_count ** (1 / excess)."""
    if seed_count <= 0 or seed_excess_vertices <= 0:
        raise ValueError("inputs must be positive")
    return seed_count ** (1.0 / seed_excess_vertices)
