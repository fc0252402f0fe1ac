"""Tree decompositions: construction, validation, nice form and file input."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidDecompositionError, ParseError
from .graph import Graph, bits, mask_of


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags plus tree links; ``parent[i]`` is ``None`` only for the root."""

    bags: tuple[frozenset[int], ...]
    parent: tuple[int | None, ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @property
    def root(self) -> int:
        return self.parent.index(None)

    def children(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.bags]
        for i, p in enumerate(self.parent):
            if p is not None:
                out[p].append(i)
        return out

    def validate(self, G: Graph) -> None:
        """Raise :class:`InvalidDecompositionError` unless this decomposes ``G``."""
        m = len(self.bags)
        if m == 0 or len(self.parent) != m:
            raise InvalidDecompositionError("decomposition needs at least one bag and a parent per bag")
        roots = [i for i, p in enumerate(self.parent) if p is None]
        if len(roots) != 1:
            raise InvalidDecompositionError(f"expected exactly one root, found {len(roots)}")
        # every bag must reach the root without cycling
        for i in range(m):
            seen = set()
            j = i
            while j is not None:
                if j in seen or not 0 <= j < m:
                    raise InvalidDecompositionError("parent links do not form a tree")
                seen.add(j)
                j = self.parent[j]
        for b in self.bags:
            if any(not 0 <= v < G.n for v in b):
                raise InvalidDecompositionError("bag mentions a vertex outside the graph")
        covered = set().union(*self.bags)
        if covered != set(range(G.n)):
            missing = sorted(set(range(G.n)) - covered)
            raise InvalidDecompositionError(f"vertices {missing} appear in no bag")
        masks = [mask_of(b) for b in self.bags]
        for u, v in G.edges():
            pair = (1 << u) | (1 << v)
            if not any(bm & pair == pair for bm in masks):
                raise InvalidDecompositionError(f"edge ({u}, {v}) is in no bag")
        for v in range(G.n):
            holders = [i for i, bm in enumerate(masks) if bm >> v & 1]
            # connected iff exactly one holder has its parent outside the holder set
            tops = [i for i in holders if self.parent[i] is None or not masks[self.parent[i]] >> v & 1]
            if len(tops) != 1:
                raise InvalidDecompositionError(f"bags containing vertex {v} are not connected")

    def is_valid(self, G: Graph) -> bool:
        try:
            self.validate(G)
        except InvalidDecompositionError:
            return False
        return True


def _min_fill_order(G: Graph) -> list[int]:
    adj = list(G.adj)
    alive = G.full_mask
    order = []
    while alive:
        best, best_key = -1, None
        for v in bits(alive):
            nb = adj[v] & alive
            fill = 0
            for u in bits(nb):
                fill += (nb & ~adj[u] & ~(1 << u)).bit_count()
            key = (fill // 2, nb.bit_count(), v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        nb = adj[best] & alive
        for u in bits(nb):
            adj[u] |= nb & ~(1 << u)
        alive &= ~(1 << best)
        order.append(best)
    return order


def from_elimination_order(G: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Decomposition whose bag for ``v`` is ``v`` plus its later neighbours in the filled graph."""
    if sorted(order) != list(range(G.n)):
        raise ValueError("order must be a permutation of the vertices")
    if G.n == 0:
        return TreeDecomposition((frozenset(),), (None,))
    pos = {v: i for i, v in enumerate(order)}
    adj = list(G.adj)
    bags = []
    alive = G.full_mask
    for v in order:
        nb = adj[v] & alive & ~(1 << v)
        for u in bits(nb):
            adj[u] |= nb & ~(1 << u)
        bags.append(frozenset(bits(nb | (1 << v))))
        alive &= ~(1 << v)
    parent: list[int | None] = []
    for i, v in enumerate(order):
        later = [pos[u] for u in bags[i] if u != v]
        parent.append(min(later) if later else None)
    # join the trees of a forest into one tree by hanging every extra root on the last bag
    last = len(order) - 1
    parent = [p if p is not None or i == last else last for i, p in enumerate(parent)]
    return TreeDecomposition(tuple(bags), tuple(parent))


def greedy_tree_decomposition(G: Graph) -> TreeDecomposition:
    """Tree decomposition from a min-fill elimination order (not necessarily optimal)."""
    return from_elimination_order(G, _min_fill_order(G))


def trivial_decomposition(G: Graph) -> TreeDecomposition:
    return TreeDecomposition((frozenset(range(G.n)),), (None,))


# --- nice form -------------------------------------------------------------------


LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: int
    vertex: int = -1
    children: tuple[int, ...] = ()


def nice_decomposition(td: TreeDecomposition) -> list[NiceNode]:
    """Nice form as a list in which every child precedes its parent.

    The last node is the root and has an empty bag; joins are binary.
    """
    nodes: list[NiceNode] = []

    def add(kind, bag, vertex=-1, children=()):
        nodes.append(NiceNode(kind, bag, vertex, tuple(children)))
        return len(nodes) - 1

    def morph(idx: int, target: int) -> int:
        bag = nodes[idx].bag
        for v in bits(bag & ~target):
            bag &= ~(1 << v)
            idx = add(FORGET, bag, v, (idx,))
        for v in bits(target & ~bag):
            bag |= 1 << v
            idx = add(INTRODUCE, bag, v, (idx,))
        return idx

    masks = [mask_of(b) for b in td.bags]
    kids = td.children()
    result: dict[int, int] = {}
    stack = [(td.root, False)]
    while stack:
        t, done = stack.pop()
        if not done:
            stack.append((t, True))
            stack.extend((c, False) for c in kids[t])
            continue
        branches = [morph(result.pop(c), masks[t]) for c in kids[t]]
        if not branches:
            branches = [morph(add(LEAF, 0), masks[t])]
        cur = branches[0]
        for other in branches[1:]:
            cur = add(JOIN, masks[t], -1, (cur, other))
        result[t] = cur
    morph(result[td.root], 0)
    return nodes


# --- file format -------------------------------------------------------------------


def parse_decomposition(text: str) -> TreeDecomposition:
    """Read ``bag <id> <v...>`` and ``edge <id> <id>`` lines (``#`` comments)."""
    bags: dict[str, frozenset[int]] = {}
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        try:
            if line[0] == "bag" and len(line) >= 2:
                if line[1] in bags:
                    raise ParseError(f"line {lineno}: duplicate bag id {line[1]}")
                bags[line[1]] = frozenset(int(v) for v in line[2:])
            elif line[0] == "edge" and len(line) == 3:
                edges.append((line[1], line[2]))
            else:
                raise ParseError(f"line {lineno}: unrecognised line {raw!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: {exc}") from None
    if not bags:
        raise ParseError("no bags")
    ids = list(bags)
    index = {b: i for i, b in enumerate(ids)}
    if len(edges) != len(ids) - 1:
        raise ParseError(f"{len(ids)} bags need {len(ids) - 1} tree edges, got {len(edges)}")
    nbrs: list[list[int]] = [[] for _ in ids]
    for a, b in edges:
        if a not in index or b not in index:
            raise ParseError(f"edge mentions unknown bag ({a}, {b})")
        nbrs[index[a]].append(index[b])
        nbrs[index[b]].append(index[a])
    parent: list[int | None] = [None] * len(ids)
    seen = {0}
    stack = [0]
    while stack:
        t = stack.pop()
        for u in nbrs[t]:
            if u not in seen:
                seen.add(u)
                parent[u] = t
                stack.append(u)
    if len(seen) != len(ids):
        raise ParseError("tree edges do not connect all bags")
    return TreeDecomposition(tuple(bags[b] for b in ids), tuple(parent))


def format_decomposition(td: TreeDecomposition) -> str:
    lines = [f"bag {i} " + " ".join(map(str, sorted(b))) for i, b in enumerate(td.bags)]
    lines += [f"edge {i} {p}" for i, p in enumerate(td.parent) if p is not None]
    return "\n".join(lines) + "\n"
