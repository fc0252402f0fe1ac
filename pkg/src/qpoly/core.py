"""Computing the subgraph component polynomial ``Q(G; x, y)``.

``Q(G; x, y) = sum over vertex sets A of x^|A| y^k(G[A])`` where ``k`` counts
connected components (the empty set contributes ``1``).  Several routes are
provided and are expected to agree exactly:

* :func:`q_brute_force` -- the subset expansion itself, used as the oracle;
* :func:`q_recursive` -- vertex deletion / extraction / contraction recursion,
  memoised on canonical forms;
* :func:`q_split` -- articulation and clique-separator splitting, falling back
  to the recursion;
* closed forms for complete, empty, path, cycle and complete bipartite graphs;
* :mod:`qpoly.treewidth` -- dynamic programming over a tree decomposition.
"""

from __future__ import annotations

import cmath
import os
import threading
from collections import OrderedDict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Hashable

from .canon import DEFAULT_BOUND, canonical_form
from .errors import BoundsError, InconsistencyError
from .graph import (
    CliqueSeparation,
    Graph,
    articulation_points,
    bits,
    component_counts_by_subset,
    component_masks,
    contract_vertex,
    cycle_graph,
    delete_vertex,
    extract_closed_neighborhood,
    find_clique_separator,
    induced_subgraph,
    is_clique,
)
from .poly import ONE, X, Y, BiPoly

BRUTE_FORCE_MAX_N = 24
DEFAULT_CACHE_SIZE = 1 << 20

ONE_PLUS_X = ONE + X
X_Y_MINUS_1 = X * (Y - 1)


class QCache:
    """Bounded LRU map from graph keys to polynomials, safe to share between threads."""

    def __init__(self, maxsize: int | None = None):
        if maxsize is None:
            maxsize = int(os.environ.get("QPOLY_CACHE_SIZE", DEFAULT_CACHE_SIZE))
        self.maxsize = maxsize
        self._data: OrderedDict[Hashable, BiPoly] = OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable) -> BiPoly | None:
        with self._lock:
            value = self._data.get(key)
            if value is None:
                self.misses += 1
                return None
            self._data.move_to_end(key)
            self.hits += 1
            return value

    def put(self, key: Hashable, value: BiPoly) -> BiPoly:
        with self._lock:
            existing = self._data.get(key)
            if existing is not None:
                return existing
            self._data[key] = value
            if len(self._data) > self.maxsize:
                self._data.popitem(last=False)
            return value

    def __len__(self):
        return len(self._data)

    def clear(self):
        with self._lock:
            self._data.clear()
            self.hits = self.misses = 0


_default_cache = QCache()


def default_cache() -> QCache:
    return _default_cache


def graph_key(G: Graph) -> Hashable:
    """Memo key: the canonical form when affordable, else the labelled graph."""
    if G.n <= DEFAULT_BOUND:
        return canonical_form(G)
    return G


# --- oracle ----------------------------------------------------------------


def q_brute_force(G: Graph) -> BiPoly:
    """Sum ``x^|A| y^k(G[A])`` over all ``2^n`` vertex subsets."""
    if G.n > BRUTE_FORCE_MAX_N:
        raise BoundsError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got {G.n}")
    counts: dict[tuple[int, int], int] = {}
    for A, k in enumerate(component_counts_by_subset(G)):
        key = (A.bit_count(), k)
        counts[key] = counts.get(key, 0) + 1
    return BiPoly(counts)


# --- closed forms ------------------------------------------------------------


def q_complete(n: int) -> BiPoly:
    return Y * ONE_PLUS_X ** n - Y + 1


def q_empty(n: int) -> BiPoly:
    return (ONE + X * Y) ** n


def q_path(n: int) -> BiPoly:
    prev, cur = ONE, ONE + X * Y
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, ONE_PLUS_X * cur + X_Y_MINUS_1 * prev
    return cur


def q_cycle(n: int) -> BiPoly:
    """Cycle recurrence ``Q(C_n) = Q(P_{n-1}) + x(y-1) Q(P_{n-3}) + x Q(C_{n-1})``."""
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    cur = q_brute_force(cycle_graph(3))
    for m in range(4, n + 1):
        cur = q_path(m - 1) + X_Y_MINUS_1 * q_path(m - 3) + X * cur
    return cur


def q_complete_bipartite(s: int, t: int) -> BiPoly:
    return (
        (ONE + X * Y) ** s
        + (ONE + X * Y) ** t
        + (ONE_PLUS_X ** s - 1) * (ONE_PLUS_X ** t - 1) * Y
        - 1
    )


def closed_form(family: str, *params: int) -> BiPoly:
    if any(p < 0 for p in params):
        raise ValueError("parameters must be non-negative")
    try:
        if family == "complete":
            (n,) = params
            return q_complete(n)
        if family == "empty":
            (n,) = params
            return q_empty(n)
        if family == "path":
            (n,) = params
            return q_path(n)
        if family == "cycle":
            (n,) = params
            return q_cycle(n)
        if family == "complete-bipartite":
            s, t = params
            return q_complete_bipartite(s, t)
        if family == "star":
            (n,) = params
            return q_complete_bipartite(1, n)
    except ValueError as exc:
        raise ValueError(f"bad parameters {params} for {family}: {exc}") from None
    raise ValueError(f"unknown family {family!r}")


def q_path_closed_form_check(n: int, x: float, y: float) -> tuple[float, float]:
    """Explicit solution of the path recurrence next to the exact value.

    With ``a = sqrt(1 - 2x + x^2 + 4xy)`` the path polynomial equals
    ``(1-x+a)/(2a) * r1^(n+1) - (1-x-a)/(2a) * r2^(n+1)`` where
    ``r1 = 2x(1-y)/(1+x-a)`` and ``r2 = 2x(1-y)/(1+x+a)``.  Since
    ``(1+x-a)(1+x+a) = 4x(1-y)``, a vanishing denominator forces a vanishing
    numerator; that removable case uses ``r1 = (1+x+a)/2``, ``r2 = (1+x-a)/2``.
    Only ``a = 0`` is singular.
    """
    a = cmath.sqrt(1 - 2 * x + x * x + 4 * x * y)
    if abs(a) < 1e-12:
        raise ValueError(f"closed form is singular at ({x}, {y})")
    d1, d2 = 1 + x - a, 1 + x + a
    r1 = 2 * x * (1 - y) / d1 if abs(d1) > 1e-12 else d2 / 2
    r2 = 2 * x * (1 - y) / d2 if abs(d2) > 1e-12 else d1 / 2
    value = (1 - x + a) / (2 * a) * r1 ** (n + 1) - (1 - x - a) / (2 * a) * r2 ** (n + 1)
    return value.real, q_path(n).eval_float(x, y)


# --- vertex-elimination recursion ------------------------------------------------


@dataclass
class RecursionStats:
    nodes: int = 0
    cache_hits: int = 0
    splits: int = 0

    def as_dict(self) -> dict:
        return {"nodes": self.nodes, "cache_hits": self.cache_hits, "splits": self.splits}


def max_degree_vertex(G: Graph) -> int:
    best, best_deg = 0, -1
    for v in range(G.n):
        d = G.adj[v].bit_count()
        if d > best_deg:
            best, best_deg = v, d
    return best


def _simplicial_vertex(G: Graph) -> int | None:
    """A vertex whose neighbourhood is a clique (lowest degree, then label)."""
    best, best_deg = None, None
    for v in range(G.n):
        d = G.adj[v].bit_count()
        if best_deg is not None and d >= best_deg:
            continue
        if is_clique(G, G.adj[v]):
            best, best_deg = v, d
            if d <= 1:
                break
    return best


def q_recursive(
    G: Graph,
    cache: QCache | None = None,
    pivot: Callable[[Graph], int] | None = None,
    stats: RecursionStats | None = None,
) -> BiPoly:
    """Vertex-elimination recursion.

    ``Q(G) = Q(G-v) + x(y-1) Q(G-N[v]) + x Q(G/v)``, applied after splitting
    into components.  Without a ``pivot`` callback the recursion prefers a
    simplicial vertex (its contraction equals its deletion, which covers the
    degree-1 shortcut) and otherwise a maximum-degree vertex.  With a
    ``pivot`` the general three-term step is always used at the chosen vertex.
    """
    cache = default_cache() if cache is None else cache
    stats = RecursionStats() if stats is None else stats

    def rec(H: Graph) -> BiPoly:
        stats.nodes += 1
        if H.n == 0:
            return ONE
        comps = component_masks(H)
        if len(comps) > 1:
            result = ONE
            for c in comps:
                result = result * rec(induced_subgraph(H, c))
            return result
        key = graph_key(H)
        hit = cache.get(key)
        if hit is not None:
            stats.cache_hits += 1
            return hit
        if H.is_complete():
            return cache.put(key, q_complete(H.n))
        if pivot is None:
            v = _simplicial_vertex(H)
            if v is not None:
                value = ONE_PLUS_X * rec(delete_vertex(H, v)) + X_Y_MINUS_1 * rec(
                    extract_closed_neighborhood(H, v)
                )
                return cache.put(key, value)
            v = max_degree_vertex(H)
        else:
            v = pivot(H)
        value = (
            rec(delete_vertex(H, v))
            + X_Y_MINUS_1 * rec(extract_closed_neighborhood(H, v))
            + X * rec(contract_vertex(H, v))
        )
        return cache.put(key, value)

    return rec(G)


# --- joins and separators ------------------------------------------------------


def q_join(QG: BiPoly, QH: BiPoly, s: int, t: int) -> BiPoly:
    """``Q(G v H)`` from ``Q(G)``, ``Q(H)`` and the two vertex counts."""
    if QG.deg_x != s or QH.deg_x != t:
        raise InconsistencyError(
            f"vertex counts ({s}, {t}) disagree with x-degrees ({QG.deg_x}, {QH.deg_x})"
        )
    return QG + QH + (ONE_PLUS_X ** s - 1) * (ONE_PLUS_X ** t - 1) * Y - 1


def q_articulation_split(QH: BiPoly, QH_minus_v: BiPoly, QK: BiPoly, QK_minus_v: BiPoly) -> BiPoly:
    """Glue two graphs sharing a single vertex ``v``.

    ``Q(H-v) Q(K-v) + [Q(H) - Q(H-v)] [Q(K) - Q(K-v)] / (xy)``.
    """
    with_v = ((QH - QH_minus_v) * (QK - QK_minus_v)).exact_div_monomial(1, 1)
    return QH_minus_v * QK_minus_v + with_v


def q_clique_separator_split(
    G: Graph,
    sep: CliqueSeparation,
    q: Callable[[Graph], BiPoly] | None = None,
) -> BiPoly:
    """Glue the split components of a clique separator by Moebius inversion.

    For every non-empty ``A`` inside the clique ``U`` the generating function
    of subsets of ``H`` meeting ``U`` exactly in ``A`` is
    ``F(H, A) = (-1)^(|A|-|U|) sum_{B >= U-A} (-1)^|B| Q(H - B)``, and
    ``Q(G) = Q(H-U) Q(K-U) + (1/y) sum_A x^-|A| F(H, A) F(K, A)``.
    """
    q = q_recursive if q is None else q
    U, h, k = sep
    if h & k != U or (h | k) != G.full_mask or h == U or k == U or not is_clique(G, U):
        raise InconsistencyError("not a valid clique separation")
    for a in bits(h & ~U):
        if G.adj[a] & (k & ~U):
            raise InconsistencyError("split components are joined outside the clique")

    u_list = list(bits(U))
    q_h: dict[int, BiPoly] = {}
    q_k: dict[int, BiPoly] = {}

    def qh(B: int) -> BiPoly:
        if B not in q_h:
            q_h[B] = q(induced_subgraph(G, h & ~B))
        return q_h[B]

    def qk(B: int) -> BiPoly:
        if B not in q_k:
            q_k[B] = q(induced_subgraph(G, k & ~B))
        return q_k[B]

    total = BiPoly()
    for r in range(1, len(u_list) + 1):
        for A in combinations(u_list, r):
            amask = sum(1 << a for a in A)
            rest = [u for u in u_list if not amask >> u & 1]
            base = U & ~amask
            sum_h = BiPoly()
            sum_k = BiPoly()
            # supersets of U-A inside U: U-A plus any subset of A
            for s in range(r + 1):
                for extra in combinations(A, s):
                    B = base | sum(1 << a for a in extra)
                    sign = -1 if (len(rest) + s) % 2 else 1
                    sum_h = sum_h + qh(B).scale(sign)
                    sum_k = sum_k + qk(B).scale(sign)
            total = total + (sum_h * sum_k).exact_div_monomial(r, 1)
    return qh(U) * qk(U) + total


def q_split(G: Graph, cache: QCache | None = None, max_clique: int = 4,
            stats: RecursionStats | None = None) -> BiPoly:
    """Splitting driver: components, then articulations, then clique separators.

    Graphs without a usable separator are handed to :func:`q_recursive`.
    """
    cache = QCache() if cache is None else cache
    stats = RecursionStats() if stats is None else stats

    def rec(H: Graph) -> BiPoly:
        stats.nodes += 1
        if H.n == 0:
            return ONE
        comps = component_masks(H)
        if len(comps) > 1:
            result = ONE
            for c in comps:
                result = result * rec(induced_subgraph(H, c))
            return result
        key = graph_key(H)
        hit = cache.get(key)
        if hit is not None:
            stats.cache_hits += 1
            return hit
        if H.n <= 2 or H.is_complete():
            return cache.put(key, q_complete(H.n))
        arts = articulation_points(H)
        if arts:
            v = min(arts)
            rest = component_masks(H, H.full_mask & ~(1 << v))
            k_mask = rest[-1] | (1 << v)
            h_mask = H.full_mask & ~rest[-1]
            Hh, Hk = induced_subgraph(H, h_mask), induced_subgraph(H, k_mask)
            vh = (h_mask & ((1 << v) - 1)).bit_count()
            vk = (k_mask & ((1 << v) - 1)).bit_count()
            stats.splits += 1
            value = q_articulation_split(
                rec(Hh), rec(delete_vertex(Hh, vh)), rec(Hk), rec(delete_vertex(Hk, vk))
            )
            return cache.put(key, value)
        sep = find_clique_separator(H, max_size=max_clique, min_size=2)
        if sep is not None:
            stats.splits += 1
            return cache.put(key, q_clique_separator_split(H, sep, rec))
        return cache.put(key, q_recursive(H, cache=cache, stats=stats))

    return rec(G)


# --- universality -----------------------------------------------------------------


def universal_recursion(G: Graph, beta, gamma) -> Fraction:
    """Evaluate ``f(G) = f(G-v) + beta f(G-N[v]) + gamma f(G/v)``.

    ``f`` is multiplicative over components with ``f(null) = 1`` and
    ``f(E_1) = 1 + beta + gamma``.  Pivots on a maximum-degree vertex.
    """
    beta, gamma = Fraction(beta), Fraction(gamma)
    memo: dict[Hashable, Fraction] = {}
    single = 1 + beta + gamma

    def rec(H: Graph) -> Fraction:
        if H.n == 0:
            return Fraction(1)
        comps = component_masks(H)
        if len(comps) > 1:
            result = Fraction(1)
            for c in comps:
                result *= rec(induced_subgraph(H, c))
            return result
        if H.n == 1:
            return single
        key = graph_key(H)
        if key in memo:
            return memo[key]
        v = max_degree_vertex(H)
        value = (
            rec(delete_vertex(H, v))
            + beta * rec(extract_closed_neighborhood(H, v))
            + gamma * rec(contract_vertex(H, v))
        )
        memo[key] = value
        return value

    return rec(G)


def q_eval_tractable(n: int, x, y) -> Fraction:
    """Evaluate ``Q(G; x, y)`` on the easy lines ``xy = 0`` and ``y = 1``.

    Only the vertex count matters there: ``Q(G; x, 0) = Q(G; 0, y) = 1`` and
    ``Q(G; x, 1) = (1 + x)^n``.
    """
    x, y = Fraction(x), Fraction(y)
    if x == 0 or y == 0:
        return Fraction(1)
    if y == 1:
        return (1 + x) ** n
    raise ValueError("only the lines xy = 0 and y = 1 are handled here")


# --- front door -------------------------------------------------------------------


METHODS = ("auto", "brute", "recursive", "split", "treewidth")


@dataclass
class QResult:
    poly: BiPoly
    method: str
    stats: dict = field(default_factory=dict)


def check_normalization(poly: BiPoly, n: int) -> None:
    """``q_00 = 1``, ``Q(G; x, 1) = (1 + x)^n`` and ``deg_x Q = n``."""
    if poly.coeff(0, 0) != 1:
        raise InconsistencyError("constant term of Q must be 1")
    if (n > 0 and poly.deg_x != n) or (n == 0 and poly != ONE):
        raise InconsistencyError(f"deg_x Q = {poly.deg_x}, expected {n}")
    at_one: dict[int, int] = {}
    for (i, _), c in poly.items():
        at_one[i] = at_one.get(i, 0) + c
    binom = 1
    for i in range(n + 1):
        if at_one.get(i, 0) != binom:
            raise InconsistencyError("Q(G; x, 1) differs from (1 + x)^n")
        binom = binom * (n - i) // (i + 1)


def compute_q(G: Graph, method: str = "auto", cache: QCache | None = None, td=None) -> QResult:
    """Compute ``Q(G)`` with the named method and check its normalisations.

    ``td`` is an optional tree decomposition for the treewidth method.
    """
    stats = RecursionStats()
    if td is not None and method != "treewidth":
        raise ValueError("a tree decomposition only applies to method 'treewidth'")
    if method == "brute":
        poly = q_brute_force(G)
    elif method == "recursive":
        poly = q_recursive(G, cache=cache, stats=stats)
    elif method in ("auto", "split"):
        poly = q_split(G, cache=cache, stats=stats)
    elif method == "treewidth":
        from .treewidth import q_treewidth

        poly = q_treewidth(G, td)
    else:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    check_normalization(poly, G.n)
    used = "split" if method == "auto" else method
    return QResult(poly, used, stats.as_dict() if method != "brute" else {})


def q_polynomial(G: Graph, method: str = "auto") -> BiPoly:
    return compute_q(G, method).poly


__all__ = [
    "QCache",
    "QResult",
    "RecursionStats",
    "check_normalization",
    "closed_form",
    "compute_q",
    "q_articulation_split",
    "q_brute_force",
    "q_clique_separator_split",
    "q_complete",
    "q_complete_bipartite",
    "q_cycle",
    "q_empty",
    "q_eval_tractable",
    "q_join",
    "q_path",
    "q_path_closed_form_check",
    "q_polynomial",
    "q_recursive",
    "q_split",
    "universal_recursion",
]
