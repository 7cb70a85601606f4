import itertools

import pytest
from hypothesis import given, settings, strategies as st

from rigicount.graphs import Graph, decode_integer, IntegerCode, nonisomorphic_graphs
from rigicount.matroid import (
    find_non_redundant_edge,
    is_3connected,
    is_globally_rigid,
    is_minimally_rigid,
    is_redundantly_rigid,
    is_rigid,
    linkage,
    maximal_rigid_subgraphs,
    minimally_rigid_spanning_subgraph,
    rank,
)

from .conftest import OVERBRACED7, PRISM6, SPANNING7, TOWER11
from .test_graphs import small_graphs

K4E = decode_integer(IntegerCode(31))


def sparse_by_counting(g: Graph, edges) -> bool:
    """Independence oracle by direct subgraph counting: every vertex subset
    with >= 2 vertices spans at most 2|S|-3 of the given edges."""
    for size in range(2, g.n + 1):
        for subset in itertools.combinations(range(g.n), size):
            inside = set(subset)
            count = sum(1 for u, v in edges if u in inside and v in inside)
            if count > 2 * size - 3:
                return False
    return True


def brute_rank(g: Graph) -> int:
    """Largest sparse edge subset, scanning sizes downward (oracle)."""
    edges = g.edge_list()
    for size in range(min(g.m, 2 * g.n - 3), -1, -1):
        for subset in itertools.combinations(edges, size):
            if sparse_by_counting(g, subset):
                return size
    return 0


class TestRank:
    def test_triangle(self):
        assert rank(Graph.complete(3)).rank == 3

    def test_k4_has_one_dependent_edge(self):
        r = rank(Graph.complete(4))
        assert r.rank == 5
        assert len(r.independent_edges) == 5

    def test_example_minus_edge(self):
        g = OVERBRACED7.remove_edge(0, 1)
        assert rank(g).rank == 10  # 2*7 - 4

    def test_witness_is_sparse(self):
        r = rank(Graph.complete(5))
        assert sparse_by_counting(Graph.complete(5), r.independent_edges)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_brute_force_equivalence_exhaustive(self, n):
        for g in nonisomorphic_graphs(n):
            if g.n >= 2:
                assert rank(g).rank == brute_rank(g)

    @given(small_graphs(max_n=6))
    @settings(max_examples=60, deadline=None)
    def test_brute_force_equivalence_random(self, g):
        assert rank(g).rank == brute_rank(g)

    @given(small_graphs(max_n=7))
    @settings(max_examples=80, deadline=None)
    def test_rank_monotone_steps(self, g):
        base = rank(g).rank
        non_edges = [
            (u, v)
            for u, v in itertools.combinations(range(g.n), 2)
            if (u, v) not in g.edges
        ]
        for e in non_edges[:4]:
            grown = rank(g.add_edge(*e)).rank
            assert grown - base in (0, 1)


class TestPredicates:
    def test_rigid_examples(self):
        assert is_rigid(Graph.complete(3))
        assert not is_rigid(Graph.cycle(4))
        assert is_rigid(OVERBRACED7)

    def test_minimally_rigid_examples(self):
        assert is_minimally_rigid(K4E)
        assert not is_minimally_rigid(Graph.complete(4))
        assert is_minimally_rigid(SPANNING7)
        assert is_minimally_rigid(PRISM6)

    def test_redundantly_rigid_examples(self):
        assert not is_redundantly_rigid(OVERBRACED7)
        assert is_redundantly_rigid(Graph.complete(4))
        assert not is_redundantly_rigid(Graph.complete(3))

    def test_globally_rigid_examples(self):
        assert is_globally_rigid(Graph.complete(4))
        assert not is_globally_rigid(OVERBRACED7)
        assert is_globally_rigid(OVERBRACED7.induced([3, 4, 5, 6]))  # K4 block
        assert is_globally_rigid(Graph.complete(2))
        assert is_globally_rigid(Graph.complete(3))
        assert not is_globally_rigid(Graph.path(3))

    def test_3connected(self):
        assert is_3connected(Graph.complete(4))
        assert not is_3connected(K4E)
        assert is_3connected(OVERBRACED7)

    @given(small_graphs(max_n=7))
    @settings(max_examples=60, deadline=None)
    def test_globally_rigid_implies_redundant_and_3connected(self, g):
        if is_globally_rigid(g) and g.n >= 4:
            assert is_redundantly_rigid(g)
            assert is_3connected(g)

    @given(small_graphs(max_n=6))
    @settings(max_examples=40, deadline=None)
    def test_minimal_rigidity_iff_no_circuit(self, g):
        if g.n < 2:
            return
        # circuit subgraph exists iff the edge set is dependent
        has_circuit = _has_circuit_subgraph(g)
        assert is_minimally_rigid(g) == (is_rigid(g) and not has_circuit)


def _has_circuit_subgraph(g: Graph) -> bool:
    """Search rigidity circuits explicitly: edge sets F with |F| = 2|V(F)|-2
    that are dependent while every single deletion is sparse."""
    edges = g.edge_list()
    for size in range(4, g.m + 1):
        for subset in itertools.combinations(edges, size):
            verts = {v for e in subset for v in e}
            if size != 2 * len(verts) - 2:
                continue
            if sparse_by_counting(g, subset):
                continue
            if all(sparse_by_counting(g, subset[:i] + subset[i + 1 :]) for i in range(size)):
                return True
    return False


class TestLinkage:
    def test_k4_minus_edge_fully_linked(self):
        b = linkage(K4E).matrix
        for u, v in itertools.combinations(range(4), 2):
            assert b[u, v]

    def test_pendant_edge_not_linked(self):
        g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
        b = linkage(g).matrix
        assert not b[0, 3] and not b[1, 3]
        assert b[2, 3]

    def test_four_cycle_opposite_pairs(self):
        g = Graph.cycle(4)
        b = linkage(g).matrix
        assert not b[0, 2] and not b[1, 3]

    @given(small_graphs(max_n=7))
    @settings(max_examples=40, deadline=None)
    def test_linkage_matches_rank_definition(self, g):
        if g.n < 2:
            return
        b = linkage(g).matrix
        base = rank(g).rank
        for u, v in itertools.combinations(range(g.n), 2):
            if (u, v) in g.edges:
                assert b[u, v]
            else:
                assert b[u, v] == (rank(g.add_edge(u, v)).rank == base)


def brute_decomposition(g: Graph) -> set[tuple[int, ...]]:
    """Vertex-maximal rigid induced subgraphs by exhaustive subset search."""
    rigid_sets = []
    for size in range(2, g.n + 1):
        for subset in itertools.combinations(range(g.n), size):
            sub = g.induced(subset)
            if sub.m and rank(sub).rank == 2 * size - 3:
                rigid_sets.append(set(subset))
    return {
        tuple(sorted(s))
        for s in rigid_sets
        if not any(s < t for t in rigid_sets)
    }


class TestDecomposition:
    def test_example_decomposition(self):
        d = maximal_rigid_subgraphs(OVERBRACED7.remove_edge(0, 1))
        assert d.vertex_sets == (
            (0, 2), (0, 6), (1, 2), (1, 5), (2, 4), (3, 4, 5, 6),
        )
        assert d.components[-1] == Graph.complete(4)

    def test_triangle_single_component(self):
        d = maximal_rigid_subgraphs(Graph.complete(3))
        assert d.vertex_sets == ((0, 1, 2),)

    def test_tower_decomposition(self):
        # deleting {10,11} leaves the 7-vertex block, a triangle on {4,8,9},
        # and four single edges
        d = maximal_rigid_subgraphs(TOWER11.remove_edge(9, 10))
        assert (0, 1, 2, 3, 4, 5, 6) in d.vertex_sets
        assert (3, 7, 8) in d.vertex_sets
        singles = {vs for vs in d.vertex_sets if len(vs) == 2}
        assert singles == {(4, 9), (6, 10), (7, 9), (8, 10)}

    @given(small_graphs(max_n=7))
    @settings(max_examples=40, deadline=None)
    def test_matches_brute_force(self, g):
        if g.n < 2 or not g.m or len(g.edge_list()) == 0:
            return
        from rigicount.graphs import is_connected

        if not is_connected(g):
            return
        d = maximal_rigid_subgraphs(g)
        assert set(d.vertex_sets) == brute_decomposition(g)

    @given(small_graphs(max_n=9))
    @settings(max_examples=60, deadline=None)
    def test_rank_identity(self, g):
        from rigicount.graphs import is_connected

        if g.n < 2 or not g.m or not is_connected(g):
            return
        d = maximal_rigid_subgraphs(g)  # re-checks the identity internally
        assert sum(2 * len(vs) - 3 for vs in d.vertex_sets) == rank(g).rank


class TestSpanningSubgraph:
    def test_k4(self):
        sub = minimally_rigid_spanning_subgraph(Graph.complete(4))
        assert sub.m == 5 and is_minimally_rigid(sub)
        # greedy keeps the lexicographically first independent edges
        assert sub.edges == Graph.complete(4).edges - {(2, 3)}

    def test_already_minimal(self):
        assert minimally_rigid_spanning_subgraph(K4E) == K4E

    def test_k4_block(self):
        block = OVERBRACED7.induced([3, 4, 5, 6])
        sub = minimally_rigid_spanning_subgraph(block)
        assert sub.m == 5 and is_minimally_rigid(sub)

    def test_not_rigid_rejected(self):
        with pytest.raises(ValueError):
            minimally_rigid_spanning_subgraph(Graph.cycle(4))


class TestNonRedundantEdge:
    def test_example(self):
        assert find_non_redundant_edge(OVERBRACED7) == (0, 1)

    def test_k4_none(self):
        assert find_non_redundant_edge(Graph.complete(4)) is None

    def test_tower(self):
        e = find_non_redundant_edge(TOWER11)
        assert e is not None
        assert not is_rigid(TOWER11.remove_edge(*e))
        # {10,11} is also a valid choice
        assert not is_rigid(TOWER11.remove_edge(9, 10))


class TestMergedSpanningSubgraph:
    """The union of spanning subgraphs of the components plus the removed
    edge is minimally rigid, for every applicable graph on <= 7 vertices."""

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_all_applicable_small(self, n):
        for g in nonisomorphic_graphs(n):
            self._check(g)

    def test_examples_seven(self):
        self._check(OVERBRACED7)

    @staticmethod
    def _check(g):
        if not is_rigid(g):
            return
        e = find_non_redundant_edge(g)
        if e is None:
            return
        d = maximal_rigid_subgraphs(g.remove_edge(*e))
        merged = {e}
        for vs, comp in zip(d.vertex_sets, d.components):
            sub = minimally_rigid_spanning_subgraph(comp)
            for a, b in sub.edges:
                ga, gb = vs[a], vs[b]
                merged.add((ga, gb) if ga < gb else (gb, ga))
        assert is_minimally_rigid(Graph.from_edges(g.n, merged))
