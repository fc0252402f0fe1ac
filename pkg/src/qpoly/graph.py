"""Simple graphs and multigraphs on vertices ``0..n-1``.

A :class:`Graph` stores one neighbour bitmask per vertex.  Every operation
returns a new graph; vertices that survive a deletion are relabelled by
order-preserving compaction, so ``delete_vertex(G, 1)`` on ``0-1-2`` yields
vertices ``0, 1`` standing for the old ``0, 2``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``adj[v]`` is the neighbour bitmask of ``v``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length must equal n")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> int:
        return self.adj[v]

    def closed_neighborhood(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    @property
    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def is_complete(self) -> bool:
        full = self.full_mask
        return all(a | (1 << v) == full for v, a in enumerate(self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def _check_vertex(G: Graph, v: int) -> None:
    if not 0 <= v < G.n:
        raise IndexError(f"vertex {v} out of range for graph on {G.n} vertices")


def _compress(mask: int, keep: int) -> int:
    """Squeeze the bits of ``mask`` that lie in ``keep`` into consecutive positions."""
    out = 0
    pos = 0
    while keep:
        low = keep & -keep
        if mask & low:
            out |= 1 << pos
        pos += 1
        keep ^= low
    return out


def induced_subgraph(G: Graph, keep: int) -> Graph:
    """Subgraph induced by the vertex bitmask ``keep``, relabelled in order."""
    keep &= G.full_mask
    if keep == G.full_mask:
        return G
    return Graph(keep.bit_count(), tuple(_compress(G.adj[v] & keep, keep) for v in bits(keep)))


def delete_vertex(G: Graph, v: int) -> Graph:
    _check_vertex(G, v)
    return induced_subgraph(G, G.full_mask & ~(1 << v))


def delete_vertices(G: Graph, remove: int) -> Graph:
    return induced_subgraph(G, G.full_mask & ~remove)


def extract_closed_neighborhood(G: Graph, v: int) -> Graph:
    """``G - N[v]``."""
    _check_vertex(G, v)
    return induced_subgraph(G, G.full_mask & ~G.closed_neighborhood(v))


def contract_vertex(G: Graph, v: int) -> Graph:
    """``G / v``: drop ``v`` and turn its neighbourhood into a clique."""
    _check_vertex(G, v)
    nbrs = G.adj[v]
    adj = list(G.adj)
    for u in bits(nbrs):
        adj[u] |= nbrs & ~(1 << u)
    return induced_subgraph(Graph(G.n, tuple(adj)), G.full_mask & ~(1 << v))


def component_of(G: Graph, v: int, within: int) -> int:
    """Bitmask of the component containing ``v`` in ``G[within]``."""
    comp = frontier = 1 << v
    adj = G.adj
    while frontier:
        grow = 0
        for u in bits(frontier):
            grow |= adj[u]
        frontier = grow & within & ~comp
        comp |= frontier
    return comp


def component_masks(G: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``G[within]`` as bitmasks, ordered by least vertex."""
    rest = G.full_mask if within is None else within
    out = []
    while rest:
        low = (rest & -rest).bit_length() - 1
        comp = component_of(G, low, rest)
        out.append(comp)
        rest &= ~comp
    return out


def connected_components(G: Graph) -> list[frozenset[int]]:
    return [frozenset(bits(c)) for c in component_masks(G)]


def num_components(G: Graph, within: int | None = None) -> int:
    return len(component_masks(G, within))


def is_connected(G: Graph) -> bool:
    return G.n > 0 and component_of(G, 0, G.full_mask) == G.full_mask


def component_counts_by_subset(G: Graph) -> list[int]:
    """``k(G[A])`` for every vertex subset ``A`` encoded as a bitmask index."""
    size = 1 << G.n
    k = [0] * size
    for A in range(1, size):
        low = (A & -A).bit_length() - 1
        k[A] = 1 + k[A & ~component_of(G, low, A)]
    return k


def disjoint_union(G1: Graph, G2: Graph) -> Graph:
    shift = G1.n
    return Graph(G1.n + G2.n, G1.adj + tuple(a << shift for a in G2.adj))


def join(G1: Graph, G2: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    left = G1.full_mask
    right = G2.full_mask << G1.n
    adj = tuple(a | right for a in G1.adj) + tuple((a << G1.n) | left for a in G2.adj)
    return Graph(G1.n + G2.n, adj)


def complement(G: Graph) -> Graph:
    full = G.full_mask
    return Graph(G.n, tuple(full & ~a & ~(1 << v) for v, a in enumerate(G.adj)))


def relabel(G: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    adj = [0] * G.n
    for v in range(G.n):
        adj[perm[v]] = mask_of(perm[u] for u in bits(G.adj[v]))
    return Graph(G.n, tuple(adj))


# --- multigraphs ---------------------------------------------------------


@dataclass(frozen=True)
class MultiGraph:
    """Undirected multigraph; ``edges`` is a sorted multiset of pairs ``(u, v)``, ``u <= v``.

    A pair ``(v, v)`` is a loop.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        norm = []
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.append((u, v) if u <= v else (v, u))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @classmethod
    def from_graph(cls, G: Graph) -> "MultiGraph":
        return cls(G.n, tuple(G.edges()))

    def simplify(self) -> Graph:
        """Underlying simple graph: loops dropped, parallel edges merged."""
        return Graph.from_edges(self.n, {(u, v) for u, v in self.edges if u != v})

    def _remove_vertices(self, drop: set[int]) -> "MultiGraph":
        keep = [v for v in range(self.n) if v not in drop]
        index = {v: i for i, v in enumerate(keep)}
        return MultiGraph(
            len(keep),
            tuple((index[u], index[v]) for u, v in self.edges if u in index and v in index),
        )

    def delete_edge(self, i: int) -> "MultiGraph":
        return MultiGraph(self.n, self.edges[:i] + self.edges[i + 1:])

    def contract_edge(self, i: int) -> "MultiGraph":
        """Unify the endpoints of edge ``i``; other parallel copies become loops."""
        u, v = self.edges[i]
        rest = self.edges[:i] + self.edges[i + 1:]
        if u == v:
            return MultiGraph(self.n, rest)
        moved = tuple((u if a == v else a, u if b == v else b) for a, b in rest)
        return MultiGraph(self.n, moved)._remove_vertices({v})

    def extract_edge(self, i: int) -> "MultiGraph":
        """Delete both endpoints of edge ``i`` with everything incident to them."""
        u, v = self.edges[i]
        return self._remove_vertices({u, v})

    def component_vertex_sets(self) -> list[list[int]]:
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        groups: dict[int, list[int]] = {}
        for v in range(self.n):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def induced(self, vertices: Sequence[int]) -> "MultiGraph":
        keep = set(vertices)
        return self._remove_vertices(set(range(self.n)) - keep)


def line_graph(G: Graph | MultiGraph) -> Graph:
    """One vertex per edge; two are adjacent when the edges share an endpoint.

    Parallel edges share both endpoints and so become adjacent; a loop is
    adjacent to every other edge at its vertex.
    """
    edges = G.edges() if isinstance(G, Graph) else list(G.edges)
    m = len(edges)
    adj = [0] * m
    for a, b in combinations(range(m), 2):
        if set(edges[a]) & set(edges[b]):
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    return Graph(m, tuple(adj))


# --- separators ----------------------------------------------------------


def articulation_points(G: Graph) -> frozenset[int]:
    """Vertices whose deletion increases the number of components."""
    base = num_components(G)
    full = G.full_mask
    return frozenset(
        v for v in range(G.n) if G.adj[v] and num_components(G, full & ~(1 << v)) > base
    )


class CliqueSeparation(NamedTuple):
    """A clique separator ``clique`` with split components ``h`` and ``k``.

    All three fields are vertex bitmasks over the parent graph;
    ``h & k == clique`` and ``h | k`` covers every vertex.
    """

    clique: int
    h: int
    k: int


def is_clique(G: Graph, vertices: int) -> bool:
    return all(G.adj[v] | (1 << v) | ~vertices == -1 for v in bits(vertices))


def find_clique_separator(
    G: Graph, max_size: int = 4, min_size: int = 1
) -> CliqueSeparation | None:
    """Smallest clique ``U`` (up to ``max_size`` vertices) whose removal disconnects ``G``.

    The first split component ``h`` absorbs every component of ``G - U`` except
    the last one (ordered by least vertex), which goes to ``k``.
    """
    full = G.full_mask
    for size in range(min_size, max_size + 1):
        for U in combinations(range(G.n), size):
            umask = mask_of(U)
            if not is_clique(G, umask):
                continue
            comps = component_masks(G, full & ~umask)
            if len(comps) < 2:
                continue
            last = comps[-1]
            return CliqueSeparation(umask, full & ~last, last | umask)
    return None


# --- named families --------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(s: int, t: int) -> Graph:
    return join(empty_graph(s), empty_graph(t))


def star_graph(n: int) -> Graph:
    """``K_{1,n}`` with centre 0."""
    return complete_bipartite(1, n)


def grid_graph(rows: int, cols: int) -> Graph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(rows * cols, edges)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])
