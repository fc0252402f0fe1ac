"""Isomorphism-class enumeration of free trees and of all small graphs."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .canon import canonical_form, canonical_relabeling
from .errors import BoundsError
from .graph import Graph, relabel

MAX_TREE_N = 12
MAX_GRAPH_N = 7


def rooted_level_sequences(n: int) -> Iterator[tuple[int, ...]]:
    """Canonical level sequences of all rooted trees on ``n`` vertices.

    Successor rule of Beyer and Hedetniemi: starting from the path
    ``0, 1, ..., n-1``, take the last position ``p`` deeper than level 1 and
    its parent ``q``, then repeat the block ``q..p-1`` over ``p..n-1``.
    """
    if n <= 0:
        return
    L = list(range(n))
    while True:
        yield tuple(L)
        p = n - 1
        while p > 0 and L[p] <= 1:
            p -= 1
        if p == 0:
            return
        q = p - 1
        while L[q] != L[p] - 1:
            q -= 1
        for i in range(p, n):
            L[i] = L[i - (p - q)]


def _parents(levels: tuple[int, ...]) -> list[int]:
    parent = [-1] * len(levels)
    last_at: dict[int, int] = {}
    for i, lv in enumerate(levels):
        if lv:
            parent[i] = last_at[lv - 1]
        last_at[lv] = i
    return parent


def _rooted_code(children: list[list[int]], root: int, skip: int = -1) -> tuple:
    """AHU code of the subtree at ``root``; ``skip`` is excluded (treat as parent)."""
    stack = [(root, skip, False)]
    codes: dict[int, tuple] = {}
    while stack:
        v, par, done = stack.pop()
        nbrs = [u for u in children[v] if u != par]
        if done:
            codes[v] = tuple(sorted((codes[u] for u in nbrs), reverse=True))
        else:
            stack.append((v, par, True))
            stack.extend((u, v, False) for u in nbrs)
    return codes[root]


def free_trees(n: int) -> Iterator[Graph]:
    """One tree per isomorphism class on ``n`` vertices.

    Rooted trees are kept only when rooted at a centroid; for bicentroidal
    trees the rooting with the larger AHU code wins.
    """
    if n > MAX_TREE_N:
        raise BoundsError(f"free-tree enumeration limited to n <= {MAX_TREE_N}")
    for levels in rooted_level_sequences(n):
        parent = _parents(levels)
        size = [1] * n
        for v in range(n - 1, 0, -1):
            size[parent[v]] += size[v]
        root_children = [v for v in range(1, n) if parent[v] == 0]
        biggest = max((size[c] for c in root_children), default=0)
        if 2 * biggest > n:
            continue
        if 2 * biggest == n:
            other = next(c for c in root_children if size[c] == biggest)
            nbrs: list[list[int]] = [[] for _ in range(n)]
            for v in range(1, n):
                nbrs[v].append(parent[v])
                nbrs[parent[v]].append(v)
            if _rooted_code(nbrs, 0) < _rooted_code(nbrs, other):
                continue
        yield Graph.from_edges(n, ((parent[v], v) for v in range(1, n)))


@lru_cache(maxsize=None)
def _graph_classes(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph(0, ()),)
    found: dict[bytes, Graph] = {}
    for H in _graph_classes(n - 1):
        for nbrs in range(1 << (n - 1)):
            adj = list(H.adj)
            for u in range(n - 1):
                if nbrs >> u & 1:
                    adj[u] |= 1 << (n - 1)
            G = Graph(n, tuple(adj) + (nbrs,))
            key = canonical_form(G)
            if key not in found:
                found[key] = relabel(G, canonical_relabeling(G))
    return tuple(found[k] for k in sorted(found))


def all_graphs(n: int, limit: int = MAX_GRAPH_N) -> Iterator[Graph]:
    """One graph per isomorphism class on ``n`` vertices.

    Each class on ``n`` vertices is reached by adding a vertex with every
    possible neighbourhood to the classes on ``n - 1`` vertices, then
    deduplicated by canonical form.  ``limit`` may be raised for offline
    checks (``n = 8`` takes about ten seconds).
    """
    if n > limit:
        raise BoundsError(f"all-graphs enumeration limited to n <= {limit}")
    if n < 0:
        raise ValueError("n must be non-negative")
    yield from _graph_classes(n)


def all_graphs_by_mask_sweep(n: int) -> list[Graph]:
    """Reference enumeration: every adjacency bitmask, deduplicated by canonical form."""
    if n > MAX_GRAPH_N:
        raise BoundsError(f"all-graphs enumeration limited to n <= {MAX_GRAPH_N}")
    pairs = [(u, v) for v in range(n) for u in range(v)]
    found: dict[bytes, Graph] = {}
    for mask in range(1 << len(pairs)):
        G = Graph.from_edges(n, (p for k, p in enumerate(pairs) if mask >> k & 1))
        found.setdefault(canonical_form(G), G)
    return [found[k] for k in sorted(found)]


FAMILIES = {
    "free-trees": free_trees,
    "trees": free_trees,
    "all-graphs": all_graphs,
}


def enumerate_graphs(family: str, n: int) -> Iterator[Graph]:
    try:
        gen = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    return gen(n)
