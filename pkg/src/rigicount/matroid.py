"""(2,3)-sparsity pebble game: rank, rigidity predicates, rigid decompositions.

The pebble game follows the Lee-Streinu directed formulation: every vertex
starts with two pebbles and an edge is accepted when four pebbles can be
gathered on its endpoints.  All tie-breaking is lexicographic so runs are
reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .graphs import Cut2, Edge, Graph, find_two_cuts, is_connected, norm_edge


class DecompositionError(RuntimeError):
    """An internal consistency check of a rigid decomposition failed."""


class _PebbleGame:
    """Directed pebble game state for the (2,3)-sparsity matroid."""

    __slots__ = ("n", "pebbles", "out")

    def __init__(self, n: int):
        self.n = n
        self.pebbles = [2] * n
        self.out: list[set[int]] = [set() for _ in range(n)]

    def _find_pebble(self, root: int, exclude: tuple[int, int]) -> bool:
        """DFS for a free pebble reachable from root; move it to root if found."""
        parent = {root: root}
        stack = [root]
        found = -1
        while stack:
            x = stack.pop()
            for w in self.out[x]:
                if w in parent:
                    continue
                parent[w] = x
                if self.pebbles[w] > 0 and w not in exclude:
                    found = w
                    stack.clear()
                    break
                stack.append(w)
        if found < 0:
            return False
        # reverse the path root -> found and carry the pebble back
        self.pebbles[found] -= 1
        self.pebbles[root] += 1
        w = found
        while w != root:
            x = parent[w]
            self.out[x].remove(w)
            self.out[w].add(x)
            w = x
        return True

    def can_gather(self, u: int, v: int) -> bool:
        """Try to collect four pebbles on {u,v}; mutates pebble positions only."""
        pb = self.pebbles
        while pb[u] + pb[v] < 4:
            moved = (pb[u] < 2 and self._find_pebble(u, (u, v))) or (
                pb[v] < 2 and self._find_pebble(v, (u, v))
            )
            if not moved:
                return False
        return True

    def insert(self, u: int, v: int) -> None:
        assert self.pebbles[u] == 2
        self.pebbles[u] -= 1
        self.out[u].add(v)


@dataclass(frozen=True)
class RankReport:
    """Rank of the (2,3)-sparsity matroid with a witnessing independent edge set."""

    rank: int
    independent_edges: tuple[Edge, ...]


def _run_game(g: Graph, edge_order: Optional[Sequence[Edge]] = None) -> tuple[_PebbleGame, list[Edge]]:
    game = _PebbleGame(g.n)
    accepted = []
    order = list(edge_order) if edge_order is not None else g.edge_list()
    for u, v in order:
        if game.can_gather(u, v):
            game.insert(u, v)
            accepted.append((u, v))
    return game, accepted


def rank(g: Graph) -> RankReport:
    if g.n < 2:
        raise ValueError("rank needs at least two vertices")
    _, accepted = _run_game(g)
    return RankReport(len(accepted), tuple(accepted))


def is_rigid(g: Graph) -> bool:
    return g.n >= 2 and rank(g).rank == 2 * g.n - 3


def is_minimally_rigid(g: Graph) -> bool:
    return is_rigid(g) and g.m == 2 * g.n - 3


def is_redundantly_rigid(g: Graph) -> bool:
    if not is_rigid(g):
        return False
    target = 2 * g.n - 3
    return all(rank(g.remove_edge(*e)).rank == target for e in g.edge_list())


def is_3connected(g: Graph) -> bool:
    if g.n < 4:
        raise ValueError("3-connectivity test needs at least four vertices")
    if not is_connected(g):
        return False
    adj = g.adjacency()
    for u, v in itertools.combinations(range(g.n), 2):
        removed = {u, v}
        start = next(w for w in range(g.n) if w not in removed)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if w not in removed and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != g.n - 2:
            return False
    return True


def is_globally_rigid(g: Graph) -> bool:
    """Jackson-Jordan criterion for n >= 4; completeness for n in {2,3}."""
    if g.n < 2:
        raise ValueError("global rigidity needs at least two vertices")
    if g.n <= 3:
        return g.m == g.n * (g.n - 1) // 2
    return is_3connected(g) and is_redundantly_rigid(g)


@dataclass(frozen=True)
class LinkageMatrix:
    """Boolean matrix: linked[u,v] iff the pair {u,v} lies in the span of E(G)."""

    matrix: np.ndarray

    def linked(self, u: int, v: int) -> bool:
        return bool(self.matrix[u, v])


def linkage(g: Graph) -> LinkageMatrix:
    """Pairs whose addition would not raise the rank (edges are always linked).

    Uses the end state of the pebble game: a pair is spanned exactly when four
    pebbles cannot be gathered on it.  Pebble relocation keeps the state valid
    between queries.
    """
    if g.n < 2:
        raise ValueError("linkage needs at least two vertices")
    game, _ = _run_game(g)
    b = np.zeros((g.n, g.n), dtype=bool)
    for u, v in g.edges:
        b[u, v] = b[v, u] = True
    for u, v in itertools.combinations(range(g.n), 2):
        if b[u, v]:
            continue
        if not game.can_gather(u, v):
            b[u, v] = b[v, u] = True
    return LinkageMatrix(b)


@dataclass(frozen=True)
class RigidDecomposition:
    """Edge decomposition of a connected graph into maximal rigid subgraphs."""

    vertex_sets: tuple[tuple[int, ...], ...]
    components: tuple[Graph, ...]  # induced subgraphs, relabeled per vertex set


def maximal_rigid_subgraphs(g: Graph) -> RigidDecomposition:
    """Maximal rigid subgraphs via linkage cliques, with invariants re-checked.

    The component of an edge {u,v} is {u,v} together with every w linked to
    both endpoints; components found this way are deduplicated and verified
    against the decomposition invariants and the rank identity
    r(G) = sum_i (2|V_i| - 3).
    """
    if g.n < 2:
        raise ValueError("decomposition needs at least two vertices")
    if not is_connected(g):
        raise ValueError("graph must be connected")
    b = linkage(g).matrix
    comp_sets: set[tuple[int, ...]] = set()
    for u, v in g.edge_list():
        members = {u, v}
        both = np.flatnonzero(b[u] & b[v])
        members.update(int(w) for w in both if w not in (u, v))
        comp_sets.add(tuple(sorted(members)))
    vertex_sets = tuple(sorted(comp_sets))
    components = tuple(g.induced(vs) for vs in vertex_sets)

    # invariant: every edge in exactly one component
    cover = {e: 0 for e in g.edges}
    for vs in vertex_sets:
        inside = set(vs)
        for e in g.edges:
            if e[0] in inside and e[1] in inside:
                cover[e] += 1
    if any(c != 1 for c in cover.values()):
        raise DecompositionError(f"edges not partitioned: {cover}")
    # invariant: pairwise intersections have at most one vertex
    for a, bb in itertools.combinations(vertex_sets, 2):
        if len(set(a) & set(bb)) > 1:
            raise DecompositionError(f"components {a} and {bb} share two vertices")
    # invariant: every component rigid; rank identity
    total = 0
    for vs, comp in zip(vertex_sets, components):
        r = rank(comp).rank
        if r != 2 * len(vs) - 3:
            raise DecompositionError(f"component {vs} is not rigid")
        total += r
    if total != rank(g).rank:
        raise DecompositionError("rank identity over components failed")
    return RigidDecomposition(vertex_sets, components)


def minimally_rigid_spanning_subgraph(g: Graph, edge_order: Optional[Sequence[Edge]] = None) -> Graph:
    """Greedy pebble-game basis over the given edge order (sorted by default)."""
    if not is_rigid(g):
        raise ValueError("input must be rigid")
    _, accepted = _run_game(g, edge_order)
    sub = Graph.from_edges(g.n, accepted)
    assert sub.m == 2 * g.n - 3
    return sub


def find_non_redundant_edge(g: Graph) -> Optional[Edge]:
    """Lexicographically smallest edge whose deletion breaks rigidity, if any."""
    if not is_rigid(g):
        raise ValueError("input must be rigid")
    target = 2 * g.n - 3
    for e in g.edge_list():
        if rank(g.remove_edge(*e)).rank < target:
            return e
    return None
