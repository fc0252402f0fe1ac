"""Q(G;x,y) by dynamic programming over a nice tree decomposition.

A state is the set of selected bag vertices split into blocks, where two
selected bag vertices share a block iff they are joined inside the selected
part of the subgraph processed so far.  Blocks are stored as a sorted tuple
of bitmasks, which is a canonical encoding of the partition.

Each vertex is forgotten exactly once, so the factor ``x`` for a selected
vertex is applied there; applying it on introduction would count vertices
twice when they are introduced below both children of a join.  A selected
vertex forgotten as the last bag member of its block closes a component and
also contributes ``y``.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import InconsistencyError
from .graph import Graph
from .poly import BiPoly, ONE
from .treedecomp import (
    FORGET,
    INTRODUCE,
    JOIN,
    LEAF,
    TreeDecomposition,
    greedy_tree_decomposition,
    nice_decomposition,
)

State = tuple[int, ...]


@lru_cache(maxsize=None)
def bell(n: int) -> int:
    """Bell number via the Bell triangle."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for a in row:
            nxt.append(nxt[-1] + a)
        row = nxt
    return row[0]


def _add(table: dict[State, BiPoly], state: State, value: BiPoly) -> None:
    prev = table.get(state)
    table[state] = value if prev is None else prev + value


def _introduce(table: dict[State, BiPoly], v: int, nbrs: int) -> dict[State, BiPoly]:
    out: dict[State, BiPoly] = {}
    for state, value in table.items():
        _add(out, state, value)
        merged = 1 << v
        rest = []
        for block in state:
            if block & nbrs:
                merged |= block
            else:
                rest.append(block)
        rest.append(merged)
        _add(out, tuple(sorted(rest)), value)
    return out


def _forget(table: dict[State, BiPoly], v: int) -> dict[State, BiPoly]:
    bit = 1 << v
    out: dict[State, BiPoly] = {}
    for state, value in table.items():
        block = next((b for b in state if b & bit), 0)
        if not block:
            _add(out, state, value)
        elif block == bit:
            _add(out, tuple(b for b in state if b != bit), value.shift(1, 1))
        else:
            new = tuple(sorted(b & ~bit if b == block else b for b in state))
            _add(out, new, value.shift(1, 0))
    return out


def _coarsen(a: State, b: State) -> State:
    """Finest partition coarser than both ``a`` and ``b`` (same ground set)."""
    blocks = list(a)
    for other in b:
        hit = other
        keep = []
        for block in blocks:
            if block & hit:
                hit |= block
            else:
                keep.append(block)
        keep.append(hit)
        blocks = keep
    return tuple(sorted(blocks))


def _join(left: dict[State, BiPoly], right: dict[State, BiPoly]) -> dict[State, BiPoly]:
    by_selected: dict[int, list[tuple[State, BiPoly]]] = {}
    for state, value in right.items():
        sel = 0
        for b in state:
            sel |= b
        by_selected.setdefault(sel, []).append((state, value))
    out: dict[State, BiPoly] = {}
    for state, value in left.items():
        sel = 0
        for b in state:
            sel |= b
        for other, other_value in by_selected.get(sel, ()):
            _add(out, _coarsen(state, other), value * other_value)
    return out


def _run(G: Graph, td: TreeDecomposition):
    """Yield ``(node, table)`` for every nice node, children before parents."""
    td.validate(G)
    nodes = nice_decomposition(td)
    tables: list[dict[State, BiPoly] | None] = [None] * len(nodes)
    for idx, node in enumerate(nodes):
        if node.kind == LEAF:
            table = {(): ONE}
        elif node.kind == INTRODUCE:
            child = tables[node.children[0]]
            table = _introduce(child, node.vertex, G.adj[node.vertex] & node.bag)
        elif node.kind == FORGET:
            table = _forget(tables[node.children[0]], node.vertex)
        elif node.kind == JOIN:
            a, b = node.children
            table = _join(tables[a], tables[b])
        else:  # pragma: no cover - nice_decomposition only emits the four kinds
            raise InconsistencyError(f"unknown node kind {node.kind!r}")
        for c in node.children:
            tables[c] = None
        tables[idx] = table
        yield node, table


def q_treewidth(G: Graph, td: TreeDecomposition | None = None, check_bound: bool = True) -> BiPoly:
    """Q(G;x,y) from a tree decomposition (greedy min-fill if none is given).

    The decomposition is validated first.  With ``check_bound`` every table
    is checked against the number of partitions of subsets of its bag.
    """
    if td is None:
        td = greedy_tree_decomposition(G)
    table: dict[State, BiPoly] = {}
    for node, table in _run(G, td):
        size = node.bag.bit_count()
        if check_bound and len(table) > bell(size + 1):
            raise InconsistencyError(
                f"{len(table)} states at a bag of size {size} exceed the partition bound"
            )
    if set(table) != {()}:
        raise InconsistencyError("root table must hold only the empty state")
    return table[()]


def live_state_counts(G: Graph, td: TreeDecomposition | None = None) -> list[tuple[int, int]]:
    """(bag size, number of states) per nice node."""
    if td is None:
        td = greedy_tree_decomposition(G)
    return [(node.bag.bit_count(), len(table)) for node, table in _run(G, td)]


__all__ = ["bell", "q_treewidth", "live_state_counts"]
