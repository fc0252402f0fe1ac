"""Links between Q and other graph polynomials.

* weighted homomorphism counts into a looped star, which equal ``Q(G; x, y)``
  at non-negative integer ``y``;
* the edge-elimination polynomial ``xi`` and its substitution into ``Q`` of
  the line graph;
* matching, characteristic and Tutte polynomials, used as comparators in a
  search for graph pairs one polynomial separates and another does not.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable

from .canon import multigraph_canonical_form
from .core import q_brute_force, q_polynomial
from .errors import BoundsError
from .generate import enumerate_graphs
from .graph import Graph, MultiGraph, bits, line_graph
from .io import to_graph6
from .poly import ONE, X, Y, BiPoly, TriPoly, UniPoly

PARTITION_MAX_N = 10
PARTITION_MAX_Y = 6
XI_MAX_EDGES = 20
COMPARATOR_MAX_N = 12
TUTTE_MAX_N = 10
TUTTE_MAX_EDGES = 20


# --- weighted homomorphisms ----------------------------------------------------------


@dataclass(frozen=True)
class WeightedModel:
    """Target multigraph with vertex weights ``alpha`` and edge weights ``beta``.

    ``beta[(a, b)]`` (``a <= b``) is the weight of mapping an edge onto the
    pair ``a, b``; missing pairs have weight 0.  Vertex weights are
    polynomials in a formal ``x`` given as :class:`UniPoly`.
    """

    H: MultiGraph
    alpha: tuple[UniPoly, ...]
    beta: dict

    def edge_weight(self, a: int, b: int) -> int:
        return self.beta.get((a, b) if a <= b else (b, a), 0)


def looped_star(leaves: int) -> WeightedModel:
    """Centre ``0`` with weight 1 joined to ``leaves`` leaves of weight ``x``; every vertex looped."""
    edges = [(v, v) for v in range(leaves + 1)] + [(0, v) for v in range(1, leaves + 1)]
    H = MultiGraph(leaves + 1, tuple(edges))
    beta: dict = {}
    for e in H.edges:
        beta[e] = beta.get(e, 0) + 1
    alpha = (UniPoly((1,)),) + (UniPoly.x(),) * leaves
    return WeightedModel(H, alpha, beta)


def homomorphism_sum(G: Graph, model: WeightedModel) -> UniPoly:
    """Sum over all maps ``V(G) -> V(H)`` of vertex weights times edge weights."""
    size = model.H.n
    earlier = [G.adj[v] & ((1 << v) - 1) for v in range(G.n)]
    total = UniPoly()

    def extend(v: int, image: list[int], weight: UniPoly):
        nonlocal total
        if v == G.n:
            total = total + weight
            return
        for t in range(size):
            w = weight * model.alpha[t]
            for u in bits(earlier[v]):
                b = model.edge_weight(image[u], t)
                if not b:
                    break
                w = w * b
            else:
                image.append(t)
                extend(v + 1, image, w)
                image.pop()

    extend(0, [], UniPoly((1,)))
    return total


@lru_cache(maxsize=4096)
def partition_polynomial(G: Graph, y: int) -> UniPoly:
    """Weighted homomorphism count into the looped star with ``y`` leaves, as a polynomial in ``x``."""
    if G.n > PARTITION_MAX_N:
        raise BoundsError(f"partition function limited to n <= {PARTITION_MAX_N}")
    if not 0 <= y <= PARTITION_MAX_Y:
        raise BoundsError(f"partition function limited to 0 <= y <= {PARTITION_MAX_Y}")
    return homomorphism_sum(G, looped_star(y))


def partition_function(G: Graph, y: int, x) -> Fraction:
    return partition_polynomial(G, y).eval(x)


# --- xi ---------------------------------------------------------------------------------

XI_X = TriPoly.monomial(1, 0, 0)


_XI_MEMO: dict = {}


def _xi_connected(M: MultiGraph) -> TriPoly:
    if not M.edges:
        return XI_X
    key = multigraph_canonical_form(M)
    hit = _XI_MEMO.get(key)
    if hit is None:
        # any edge works; the first keeps the choice deterministic
        hit = (
            xi(M.delete_edge(0))
            + xi(M.contract_edge(0)).shift(0, 1, 0)
            + xi(M.extract_edge(0)).shift(0, 0, 1)
        )
        _XI_MEMO[key] = hit
    return hit


def xi(M: MultiGraph | Graph) -> TriPoly:
    """``xi(G) = xi(G-e) + y xi(G/e) + z xi(G extract e)``, ``xi(E_1) = x``, ``xi(null) = 1``.

    For a loop, deletion and contraction both remove the loop and
    extraction removes its vertex.
    """
    if isinstance(M, Graph):
        M = MultiGraph.from_graph(M)
    if len(M.edges) > XI_MAX_EDGES:
        raise BoundsError(f"xi limited to {XI_MAX_EDGES} edges")
    result = TriPoly.const(1)
    for comp in M.component_vertex_sets():
        result = result * _xi_connected(M.induced(comp))
    return result


def xi_to_q(p: TriPoly) -> BiPoly:
    """Substitute ``(1, x, x(y - 1))``."""
    return BiPoly.const(0) + p.substitute(ONE, X, X * (Y - 1))


def line_graph_identity_check(M: MultiGraph | Graph) -> bool:
    """Compare ``xi(G; 1, x, x(y-1))`` with ``Q`` of the line graph computed by subset expansion."""
    return xi_to_q(xi(M)) == q_brute_force(line_graph(M))


# --- comparator polynomials ---------------------------------------------------------


def _check_n(G: Graph, limit: int, what: str) -> None:
    if G.n > limit:
        raise BoundsError(f"{what} limited to n <= {limit}")


def matching_polynomial(G: Graph) -> UniPoly:
    """``sum_i m_i x^i`` with ``m_i`` the number of ``i``-edge matchings."""
    _check_n(G, COMPARATOR_MAX_N, "matching polynomial")

    @lru_cache(maxsize=None)
    def rec(alive: int) -> UniPoly:
        v = next((u for u in bits(alive) if G.adj[u] & alive), None)
        if v is None:
            return UniPoly((1,))
        rest = alive & ~(1 << v)
        total = rec(rest)
        for u in bits(G.adj[v] & rest):
            total = total + rec(rest & ~(1 << u)) * UniPoly.x()
        return total

    return rec(G.full_mask)


def characteristic_polynomial(G: Graph) -> UniPoly:
    """``det(xI - A)`` by the Faddeev-LeVerrier recurrence in exact integers."""
    _check_n(G, COMPARATOR_MAX_N, "characteristic polynomial")
    n = G.n
    A = [[(G.adj[i] >> j) & 1 for j in range(n)] for i in range(n)]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M <- A M + c_{n-k+1} I
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            AM[i][i] += coeffs[n - k + 1]
        M = AM
        trace = sum(sum(A[i][t] * M[t][i] for t in range(n)) for i in range(n))
        c, r = divmod(-trace, k)
        assert r == 0, "Faddeev-LeVerrier division must be exact for integer matrices"
        coeffs[n - k] = c
    return UniPoly(coeffs)


def tutte_polynomial(G: Graph) -> BiPoly:
    """``T(G; x, y) = sum_A (x-1)^(r(E)-r(A)) (y-1)^(|A|-r(A))`` over edge subsets ``A``."""
    _check_n(G, TUTTE_MAX_N, "Tutte polynomial")
    edges = G.edges()
    m = len(edges)
    if m > TUTTE_MAX_EDGES:
        raise BoundsError(f"Tutte polynomial limited to {TUTTE_MAX_EDGES} edges")
    tally: dict[tuple[int, int], int] = {}

    def walk(i: int, comp: list[int], rank: int, size: int):
        if i == m:
            key = (rank, size - rank)
            tally[key] = tally.get(key, 0) + 1
            return
        walk(i + 1, comp, rank, size)
        u, v = edges[i]
        cu, cv = comp[u], comp[v]
        if cu == cv:
            walk(i + 1, comp, rank, size + 1)
        else:
            merged = [cu if c == cv else c for c in comp]
            walk(i + 1, merged, rank + 1, size + 1)

    walk(0, list(range(G.n)), 0, 0)
    full_rank = max(r for r, _ in tally)
    xm1, ym1 = X - 1, Y - 1
    total = BiPoly()
    for (r, nullity), count in tally.items():
        total = total + (xm1 ** (full_rank - r) * ym1**nullity).scale(count)
    return total


# --- distinguishing search ------------------------------------------------------------


COMPARATORS: dict[str, Callable[[Graph], object]] = {
    "Q": q_polynomial,
    "matching": matching_polynomial,
    "characteristic": characteristic_polynomial,
    "tutte": tutte_polynomial,
}


@dataclass(frozen=True)
class WitnessPair:
    a: Graph
    b: Graph
    equal_under: str
    differ_under: str

    def as_dict(self) -> dict:
        return {
            "g6_a": to_graph6(self.a),
            "g6_b": to_graph6(self.b),
            "equal_under": self.equal_under,
            "differ_under": self.differ_under,
        }


@dataclass(frozen=True)
class SearchReport:
    family: str
    n: tuple[int, ...]
    comparator: str
    pairs: tuple[WitnessPair, ...]

    def select(self, equal_under: str) -> list[WitnessPair]:
        return [p for p in self.pairs if p.equal_under == equal_under]

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "n": list(self.n),
            "comparator": self.comparator,
            "pairs": [p.as_dict() for p in self.pairs],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def _grouped_pairs(graphs: list[Graph], values: list, other: list | None):
    groups: dict = {}
    for idx, val in enumerate(values):
        groups.setdefault(val, []).append(idx)
    for members in groups.values():
        for i, j in combinations(members, 2):
            if other is None or other[i] != other[j]:
                yield graphs[i], graphs[j]


def distinguishing_search(
    family: str, n: int | Iterable[int], comparator: str = "Q", cumulative: bool = False
) -> SearchReport:
    """Pairs of non-isomorphic graphs of equal order that one polynomial separates and another does not.

    With ``comparator="Q"`` the report lists pairs with equal ``Q``.  With any
    other comparator ``C`` it lists pairs with equal ``C`` but different
    ``Q``, then pairs with equal ``Q`` but different ``C``.  ``cumulative``
    searches every order from 1 to ``n``.
    """
    if comparator not in COMPARATORS:
        raise ValueError(f"unknown comparator {comparator!r}; choose from {sorted(COMPARATORS)}")
    if isinstance(n, int):
        orders = list(range(1, n + 1)) if cumulative else [n]
    else:
        orders = sorted(set(n))
    pairs: list[WitnessPair] = []
    for order in orders:
        graphs = list(enumerate_graphs(family, order))
        qs = [q_polynomial(G) for G in graphs]
        if comparator == "Q":
            pairs += [WitnessPair(a, b, "Q", "isomorphism") for a, b in _grouped_pairs(graphs, qs, None)]
            continue
        cs = [COMPARATORS[comparator](G) for G in graphs]
        pairs += [WitnessPair(a, b, comparator, "Q") for a, b in _grouped_pairs(graphs, cs, qs)]
        pairs += [WitnessPair(a, b, "Q", comparator) for a, b in _grouped_pairs(graphs, qs, cs)]
    return SearchReport(family, tuple(orders), comparator, tuple(pairs))


__all__ = [
    "COMPARATORS",
    "SearchReport",
    "WeightedModel",
    "WitnessPair",
    "characteristic_polynomial",
    "distinguishing_search",
    "homomorphism_sum",
    "line_graph_identity_check",
    "looped_star",
    "matching_polynomial",
    "partition_function",
    "partition_polynomial",
    "tutte_polynomial",
    "xi",
    "xi_to_q",
]
