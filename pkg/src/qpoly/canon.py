"""Canonical forms for small graphs and multigraphs.

The key is the lexicographically least upper-triangular adjacency string
over all vertex orders compatible with an equitable colour refinement.
Refinement starts from degrees and is re-run after each individualised
vertex; cells made of mutual twins are never branched on because swapping
twins is an automorphism.
"""

from __future__ import annotations

import os
from functools import lru_cache
from typing import Sequence

from .errors import BoundsError
from .graph import Graph, MultiGraph

DEFAULT_BOUND = 16

Matrix = tuple[tuple[int, ...], ...]


def _refine(matrix: Matrix, cells: list[list[int]]) -> list[list[int]]:
    """Split cells until every vertex of a cell sees the same weight into every cell."""
    while True:
        changed = False
        out: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sigs = {}
            for v in cell:
                row = matrix[v]
                sigs[v] = tuple(sum(row[u] for u in other) for other in cells)
            if len(set(sigs.values())) == 1:
                out.append(cell)
                continue
            changed = True
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                groups.setdefault(sigs[v], []).append(v)
            out.extend(groups[s] for s in sorted(groups))
        cells = out
        if not changed:
            return cells


def _mutual_twins(matrix: Matrix, cell: Sequence[int]) -> bool:
    first = cell[0]
    n = len(matrix)
    for v in cell[1:]:
        if matrix[first][first] != matrix[v][v]:
            return False
        for w in range(n):
            if w != first and w != v and matrix[first][w] != matrix[v][w]:
                return False
    return True


def _leaf(matrix: Matrix, order: list[int], loops: bool) -> tuple[int, ...]:
    n = len(order)
    out = []
    for i in range(n):
        row = matrix[order[i]]
        start = i if loops else i + 1
        out.extend(row[order[j]] for j in range(start, n))
    return tuple(out)


def canonical_order(matrix: Matrix, loops: bool = False) -> tuple[tuple[int, ...], list[int]]:
    """Best leaf string and the vertex order realising it."""
    n = len(matrix)
    init_key = [(matrix[v][v], sum(matrix[v]) - matrix[v][v]) for v in range(n)]
    groups: dict[tuple, list[int]] = {}
    for v in range(n):
        groups.setdefault(init_key[v], []).append(v)
    cells = _refine(matrix, [groups[k] for k in sorted(groups)])

    best: list = [None, None]

    def search(cells):
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            leaf = _leaf(matrix, order, loops)
            if best[0] is None or leaf < best[0]:
                best[0], best[1] = leaf, order
            return
        cell = cells[target]
        choices = cell[:1] if _mutual_twins(matrix, cell) else cell
        for v in choices:
            rest = [u for u in cell if u != v]
            split = cells[:target] + [[v], rest] + cells[target + 1:]
            search(_refine(matrix, split))

    search(cells)
    return best[0], best[1]


def _bound() -> int:
    return int(os.environ.get("QPOLY_CANON_BOUND", DEFAULT_BOUND))


def graph_matrix(G: Graph) -> Matrix:
    return tuple(tuple((a >> u) & 1 for u in range(G.n)) for a in G.adj)


@lru_cache(maxsize=1 << 18)
def canonical_form(G: Graph, bound: int | None = None) -> bytes:
    """Isomorphism-invariant key of a simple graph.

    Raises :class:`BoundsError` above ``bound`` vertices (default 16).
    """
    limit = _bound() if bound is None else bound
    if G.n > limit:
        raise BoundsError(f"canonical form limited to {limit} vertices, got {G.n}")
    if G.n == 0:
        return b"\x00\x00"
    leaf, _ = canonical_order(graph_matrix(G))
    value = 0
    for b in leaf:
        value = value << 1 | b
    nbytes = (len(leaf) + 7) // 8
    return G.n.to_bytes(2, "big") + value.to_bytes(nbytes, "big")


def canonical_relabeling(G: Graph) -> list[int]:
    """Permutation ``perm`` such that ``relabel(G, perm)`` is the canonical representative."""
    _, order = canonical_order(graph_matrix(G))
    perm = [0] * G.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return perm


@lru_cache(maxsize=1 << 16)
def multigraph_canonical_form(M: MultiGraph, bound: int | None = None) -> tuple:
    """Isomorphism-invariant key of a multigraph (multiplicities and loops included)."""
    limit = _bound() if bound is None else bound
    if M.n > limit:
        raise BoundsError(f"canonical form limited to {limit} vertices, got {M.n}")
    rows = [[0] * M.n for _ in range(M.n)]
    for u, v in M.edges:
        rows[u][v] += 1
        if u != v:
            rows[v][u] += 1
    leaf, _ = canonical_order(tuple(tuple(r) for r in rows), loops=True)
    return (M.n, leaf)
