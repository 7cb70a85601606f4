"""Labeled simple undirected graphs: codecs, connectivity, 2-cuts, canonical forms.

Vertices are 0-based internally.  The integer codec and the text formats use
1-based labels, matching the usual convention for published certificate codes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"loop edge ({u},{v}) not allowed")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with a frozen edge set."""

    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u},{v}) for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(norm_edge(u, v) for u, v in edges))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, frozenset(itertools.combinations(range(n), 2)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_list(self) -> list[Edge]:
        return sorted(self.edges)

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def add_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.n, self.edges | {norm_edge(u, v)})

    def remove_edge(self, u: int, v: int) -> "Graph":
        e = norm_edge(u, v)
        if e not in self.edges:
            raise ValueError(f"edge {e} not present")
        return Graph(self.n, self.edges - {e})

    def remove_vertex(self, v: int) -> "Graph":
        """Delete v and relabel the remaining vertices to 0..n-2 keeping order."""
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range")
        relabel = {u: (u if u < v else u - 1) for u in range(self.n) if u != v}
        edges = [(relabel[a], relabel[b]) for a, b in self.edges if v not in (a, b)]
        return Graph.from_edges(self.n - 1, edges)

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabeled so sorted(vertices)[i] becomes i."""
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        edges = [(pos[a], pos[b]) for a, b in self.edges if a in pos and b in pos]
        return Graph.from_edges(len(vs), edges)

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int8)
        for u, v in self.edges:
            a[u, v] = 1
            a[v, u] = 1
        return a

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_list()})"


# ---------------------------------------------------------------------------
# integer codec: upper triangle of the adjacency matrix, read row-wise,
# interpreted as a binary number (most significant bit first)

@dataclass(frozen=True)
class IntegerCode:
    value: int
    declared_n: Optional[int] = None

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("code value must be non-negative")
        if self.declared_n is not None:
            if self.declared_n < 1:
                raise ValueError("declared_n must be positive")
            cap = self.declared_n * (self.declared_n - 1) // 2
            if self.value.bit_length() > cap:
                raise ValueError(
                    f"value needs {self.value.bit_length()} bits, "
                    f"n={self.declared_n} allows only {cap}"
                )


def minimal_vertex_count(value: int) -> int:
    """Smallest n with n(n-1)/2 >= bit_length(value)."""
    bits = value.bit_length()
    n = 1
    while n * (n - 1) // 2 < bits:
        n += 1
    return n


def _upper_triangle_pairs(n: int) -> list[Edge]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def decode_integer(code: IntegerCode) -> Graph:
    """Graph from an integer code, left-padding with zero bits as needed."""
    n = code.declared_n if code.declared_n is not None else minimal_vertex_count(code.value)
    length = n * (n - 1) // 2
    bits = bin(code.value)[2:].zfill(length) if length else ""
    edges = [pair for pair, bit in zip(_upper_triangle_pairs(n), bits) if bit == "1"]
    return Graph.from_edges(n, edges)


def encode_integer(g: Graph) -> IntegerCode:
    value = 0
    for pair in _upper_triangle_pairs(g.n):
        value = (value << 1) | (1 if pair in g.edges else 0)
    return IntegerCode(value, g.n)


def parse_code_line(line: str) -> IntegerCode:
    """Parse '<decimal>' or '<decimal> n=<k>' (also '<decimal>,n=<k>')."""
    parts = line.replace(",", " ").split()
    if not parts:
        raise ValueError("empty code line")
    value = int(parts[0])
    declared = None
    for tok in parts[1:]:
        if tok.startswith("n="):
            declared = int(tok[2:])
        else:
            raise ValueError(f"unexpected token {tok!r} in code line")
    return IntegerCode(value, declared)


def parse_edge_list(text: str) -> Graph:
    """Edge-list format: first line 'n m', then m lines 'i j' with 1-based labels."""
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty edge list")
    n, m = map(int, lines[0].split())
    edges = []
    for ln in lines[1 : 1 + m]:
        i, j = map(int, ln.split())
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"vertex out of range in line {ln!r}")
        edges.append((i - 1, j - 1))
    if len(edges) != m:
        raise ValueError(f"expected {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u + 1} {v + 1}" for u, v in g.edge_list()]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# connectivity

def connected_components(g: Graph) -> list[set[int]]:
    adj = g.adjacency()
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = {start}
        seen[start] = True
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def _connected_after_removal(g: Graph, removed: set[int]) -> bool:
    adj = g.adjacency()
    remaining = [v for v in range(g.n) if v not in removed]
    if not remaining:
        return True
    seen = {remaining[0]}
    stack = [remaining[0]]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(remaining)


def biconnected_component_count(g: Graph) -> int:
    """Number of blocks (maximal 2-connected subgraphs; bridges count as blocks)."""
    if g.n < 2:
        raise ValueError("need at least two vertices")
    if not is_connected(g):
        raise ValueError("graph must be connected")
    adj = g.adjacency()
    disc = [-1] * g.n
    low = [0] * g.n
    edge_stack: list[Edge] = []
    blocks = 0
    timer = 0
    # iterative Hopcroft-Tarjan
    for root in range(g.n):
        if disc[root] != -1:
            continue
        stack = [(root, -1, iter(adj[root]))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if disc[w] == -1:
                    edge_stack.append(norm_edge(u, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, u, iter(adj[w])))
                    advanced = True
                    break
                elif disc[w] < disc[u]:
                    edge_stack.append(norm_edge(u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] >= disc[p]:
                    # pop one block off the edge stack
                    blocks += 1
                    target = norm_edge(p, u)
                    while edge_stack:
                        e = edge_stack.pop()
                        if e == target:
                            break
    return blocks


# ---------------------------------------------------------------------------
# 2-cuts

@dataclass(frozen=True)
class Cut2:
    """Separating vertex pair {u,v} with the canonical bipartition of the rest."""

    u: int
    v: int
    sides: tuple[frozenset[int], frozenset[int]]

    def __post_init__(self):
        if self.u >= self.v:
            raise ValueError("cut pair must be ordered u < v")
        if not self.sides[0] or not self.sides[1]:
            raise ValueError("cut sides must be nonempty")
        if self.sides[0] & self.sides[1]:
            raise ValueError("cut sides must be disjoint")


def find_two_cuts(g: Graph) -> list[Cut2]:
    """All separating pairs, each with side1 = first component by (size, min id)."""
    if g.n < 4:
        raise ValueError("need at least four vertices")
    if not is_connected(g):
        raise ValueError("graph must be connected")
    cuts = []
    for u, v in itertools.combinations(range(g.n), 2):
        removed = {u, v}
        sub = [w for w in range(g.n) if w not in removed]
        comps = _components_avoiding(g, removed, sub)
        if len(comps) >= 2:
            comps.sort(key=lambda c: (len(c), min(c)))
            side1 = frozenset(comps[0])
            side2 = frozenset().union(*comps[1:])
            cuts.append(Cut2(u, v, (side1, side2)))
    return cuts


def _components_avoiding(g: Graph, removed: set[int], remaining: list[int]) -> list[set[int]]:
    adj = g.adjacency()
    seen = set(removed)
    comps = []
    for start in remaining:
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        stack = [start]
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def split_at_cut(g: Graph, cut: Cut2) -> tuple[Graph, Graph]:
    """Split g at a 2-cut into the two induced sides, each keeping {u,v}.

    Returns relabeled subgraphs K (side1 + cut pair) and L (side2 + cut pair).
    The defining set equations are re-checked on every call.
    """
    vk = set(cut.sides[0]) | {cut.u, cut.v}
    vl = set(cut.sides[1]) | {cut.u, cut.v}
    ek = {e for e in g.edges if e[0] in vk and e[1] in vk}
    el = {e for e in g.edges if e[0] in vl and e[1] in vl}
    if vk | vl != set(range(g.n)):
        raise ValueError("cut sides do not cover the vertex set")
    if vk & vl != {cut.u, cut.v}:
        raise ValueError("cut sides overlap beyond {u,v}")
    if ek | el != g.edges:
        raise ValueError("cut is not separating: an edge crosses the sides")
    return g.induced(vk), g.induced(vl)


# ---------------------------------------------------------------------------
# canonical forms
#
# For n <= 8 the key is the exact minimum of encode_integer over all n!
# relabelings, computed with one vectorized pass over a cached permutation
# table.  For larger graphs (only used as cache keys by the counting engine)
# we fall back to an exact refinement/individualization search.

_PERM_TABLE_MAX = 8


@lru_cache(maxsize=None)
def _perm_table(n: int) -> np.ndarray:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    return perms


@lru_cache(maxsize=None)
def _triu_weights(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    iu = np.triu_indices(n, 1)
    k = len(iu[0])
    weights = (1 << np.arange(k - 1, -1, -1)).astype(np.int64)
    return iu[0], iu[1], weights


def _min_code_over_permutations(g: Graph) -> int:
    a = g.adjacency_matrix()
    perms = _perm_table(g.n)
    rows, cols, weights = _triu_weights(g.n)
    permuted = a[perms[:, :, None], perms[:, None, :]]
    bits = permuted[:, rows, cols].astype(np.int64)
    keys = bits @ weights
    return int(keys.min())


def _refine_colors(n: int, adj: list[set[int]], colors: list[int]) -> list[int]:
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(n)]
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _ir_min_code(g: Graph) -> int:
    """Exact canonical code by refinement with branching on tied color classes."""
    adj = g.adjacency()
    n = g.n
    best: list[Optional[int]] = [None]

    def code_for(order: list[int]) -> int:
        pos = {v: i for i, v in enumerate(order)}
        edgeset = {tuple(sorted((pos[a], pos[b]))) for a, b in g.edges}
        value = 0
        for pair in _upper_triangle_pairs(n):
            value = (value << 1) | (1 if pair in edgeset else 0)
        return value

    def search(colors: list[int]):
        colors = _refine_colors(n, adj, colors)
        classes: dict[int, list[int]] = {}
        for v in range(n):
            classes.setdefault(colors[v], []).append(v)
        split = next((c for c in sorted(classes) if len(classes[c]) > 1), None)
        if split is None:
            order = sorted(range(n), key=lambda v: colors[v])
            val = code_for(order)
            if best[0] is None or val < best[0]:
                best[0] = val
            return
        # one representative per transposition orbit: if swapping v with an
        # already-chosen representative is an automorphism, v's subtree
        # yields the same minimum
        reps: list[int] = []
        for v in classes[split]:
            if any(adj[v] - {w} == adj[w] - {v} for w in reps):
                continue
            reps.append(v)
        for v in reps:
            branched = list(colors)
            branched[v] = -1  # individualize: strictly smallest color
            search(branched)

    search([0] * n)
    assert best[0] is not None
    return best[0]


def canonical_form(g: Graph) -> bytes:
    """Isomorphism-invariant key: equal iff graphs are isomorphic."""
    if g.n <= _PERM_TABLE_MAX:
        code = _min_code_over_permutations(g)
    else:
        code = _ir_min_code(g)
    length = (g.n * (g.n - 1) // 2 + 7) // 8
    return bytes([g.n]) + code.to_bytes(max(length, 1), "big")


# ---------------------------------------------------------------------------
# enumeration up to isomorphism (vertex augmentation with canonical dedup)

@lru_cache(maxsize=None)
def nonisomorphic_graphs(n: int) -> tuple[Graph, ...]:
    """All graphs on n vertices up to isomorphism, small n only."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return (Graph(1, frozenset()),)
    seen: dict[bytes, Graph] = {}
    for h in nonisomorphic_graphs(n - 1):
        base = list(h.edges)
        for mask in range(1 << (n - 1)):
            extra = [(i, n - 1) for i in range(n - 1) if mask >> i & 1]
            g = Graph(n, frozenset(base + extra))
            key = canonical_form(g)
            if key not in seen:
                seen[key] = g
    return tuple(seen[k] for k in sorted(seen))
