"""The numbered acceptance checks, shared by the test suite and ``qpoly selftest``.

Each check returns a :class:`CriterionResult`; an exception inside a check is
reported as a failure rather than propagated.
"""

from __future__ import annotations

import cmath
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .bridges import (
    characteristic_polynomial,
    distinguishing_search,
    line_graph_identity_check,
    matching_polynomial,
    partition_function,
    tutte_polynomial,
)
from .canon import canonical_form
from .core import (
    closed_form,
    q_articulation_split,
    q_brute_force,
    q_clique_separator_split,
    q_join,
    q_path_closed_form_check,
    q_polynomial,
    q_recursive,
    q_split,
    universal_recursion,
)
from .derived import (
    basic_invariants,
    deck,
    direct_invariants,
    independence,
    monte_carlo_reliability,
    reconstruct,
    reliability,
)
from .generate import all_graphs, free_trees
from .graph import (
    Graph,
    MultiGraph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    delete_vertex,
    empty_graph,
    find_clique_separator,
    induced_subgraph,
    is_connected,
    path_graph,
    random_graph,
    star_graph,
)
from .poly import BiPoly
from .treewidth import q_treewidth

SEED = 20240601


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number:2d} {status} {self.title}: {self.detail} ({self.seconds:.1f}s)"


def _random_graphs(count: int, n_min: int, n_max: int, seed: int) -> list[Graph]:
    rng = random.Random(seed)
    return [random_graph(rng.randint(n_min, n_max), rng.uniform(0.1, 0.9), rng) for _ in range(count)]


def _graphs_up_to(n_max: int, n_min: int = 0) -> Iterable[Graph]:
    for n in range(n_min, n_max + 1):
        yield from all_graphs(n, limit=max(n_max, 7))


# --- 1 ---------------------------------------------------------------------------------


STAR3_TERMS = {(0, 0): 1, (1, 1): 4, (2, 1): 3, (3, 1): 3, (4, 1): 1, (2, 2): 3, (3, 3): 1}


def golden_polynomial() -> tuple[bool, str]:
    expected = BiPoly(STAR3_TERMS)
    G = star_graph(3)
    got = {m: q(G) for m, q in (("brute", q_brute_force), ("auto", q_polynomial))}
    bad = [m for m, p in got.items() if p != expected]
    return not bad, f"Q(K_1,3) = {got['auto']}" + (f"; mismatch via {bad}" if bad else "")


# --- 2 ---------------------------------------------------------------------------------


def closed_forms() -> tuple[bool, str]:
    cases: list[tuple[str, BiPoly, Graph]] = []
    for n in range(11):
        cases.append((f"K_{n}", closed_form("complete", n), complete_graph(n)))
        cases.append((f"E_{n}", closed_form("empty", n), empty_graph(n)))
        cases.append((f"P_{n}", closed_form("path", n), path_graph(n)))
        if n >= 3:
            cases.append((f"C_{n}", closed_form("cycle", n), cycle_graph(n)))
    for s in range(6):
        for t in range(6):
            cases.append((f"K_{s},{t}", closed_form("complete-bipartite", s, t), complete_bipartite(s, t)))
    bad = [name for name, formula, G in cases if formula != q_brute_force(G)]
    return not bad, f"{len(cases) - len(bad)}/{len(cases)} closed forms equal the subset expansion" + (
        f"; failing {bad}" if bad else ""
    )


# --- 3 ---------------------------------------------------------------------------------


def path_explicit_solution() -> tuple[bool, str]:
    rng = random.Random(SEED + 3)
    points = []
    while len(points) < 20:
        x, y = rng.uniform(-2, 3), rng.uniform(-2, 3)
        a = cmath.sqrt(1 - 2 * x + x * x + 4 * x * y)
        if abs(a) > 1e-3 and abs(x) > 1e-3:
            points.append((x, y))
    worst = 0.0
    for x, y in points:
        for n in range(9):
            closed, exact = q_path_closed_form_check(n, x, y)
            worst = max(worst, abs(closed - exact) / abs(exact) if exact else abs(closed))
    return worst <= 1e-9, f"max relative deviation {worst:.2e} over 20 points, n <= 8 (limit 1e-9)"


# --- 4 ---------------------------------------------------------------------------------


def _separator_routes(G: Graph) -> list[tuple[str, BiPoly]]:
    """Direct articulation and clique-separator evaluations, where ``G`` admits them."""
    out = []
    if not is_connected(G):
        return out
    sep = find_clique_separator(G, max_size=1)
    if sep is not None:
        v = sep.clique.bit_length() - 1
        H, K = induced_subgraph(G, sep.h), induced_subgraph(G, sep.k)
        # index of the articulation inside each split component
        vh = (sep.h & ((1 << v) - 1)).bit_count()
        vk = (sep.k & ((1 << v) - 1)).bit_count()
        out.append((
            "articulation",
            q_articulation_split(
                q_recursive(H), q_recursive(delete_vertex(H, vh)),
                q_recursive(K), q_recursive(delete_vertex(K, vk)),
            ),
        ))
    sep = find_clique_separator(G, max_size=4)
    if sep is not None:
        out.append(("clique-separator", q_clique_separator_split(G, sep)))
    return out


def cross_method() -> tuple[bool, str]:
    graphs = list(_graphs_up_to(7)) + _random_graphs(200, 1, 12, SEED + 4)
    mismatches = []
    separator_uses = 0
    for G in graphs:
        ref = q_brute_force(G)
        routes = [("recursive", q_recursive(G)), ("treewidth", q_treewidth(G)), ("split", q_split(G))]
        extra = _separator_routes(G)
        separator_uses += len(extra)
        for name, value in routes + extra:
            if value != ref:
                mismatches.append((name, G))
    return not mismatches, (
        f"{len(graphs)} graphs, {separator_uses} direct separator evaluations, "
        f"{len(mismatches)} mismatches"
    )


# --- 5 ---------------------------------------------------------------------------------


def tree_census() -> tuple[bool, str]:
    counts = {n: len(distinguishing_search("free-trees", n, "Q").pairs) for n in range(1, 11)}
    ok = all(counts[n] == 0 for n in range(1, 10)) and counts[10] == 1
    return ok, "colliding pairs by n: " + ", ".join(f"{n}:{c}" for n, c in counts.items())


def colliding_tree_pair() -> tuple[Graph, Graph]:
    pairs = distinguishing_search("free-trees", 10, "Q").pairs
    if len(pairs) != 1:
        raise AssertionError(f"expected one colliding 10-vertex tree pair, found {len(pairs)}")
    return pairs[0].a, pairs[0].b


# --- 6 ---------------------------------------------------------------------------------


def distinguishing() -> tuple[bool, str]:
    P4, S3 = path_graph(4), star_graph(3)
    tutte_equal = tutte_polynomial(P4) == tutte_polynomial(S3)
    q_differ = q_polynomial(P4) != q_polynomial(S3)
    spectral = distinguishing_search("all-graphs", 7, "characteristic", cumulative=True)
    match = distinguishing_search("all-graphs", 7, "matching", cumulative=True)
    cospectral = spectral.select("characteristic")
    comatching = match.select("matching")
    # re-check the first witnesses directly
    witnesses_ok = all(
        characteristic_polynomial(p.a) == characteristic_polynomial(p.b) and q_polynomial(p.a) != q_polynomial(p.b)
        for p in cospectral[:1]
    ) and all(
        matching_polynomial(p.a) == matching_polynomial(p.b) and q_polynomial(p.a) != q_polynomial(p.b)
        for p in comatching[:1]
    )
    ok = tutte_equal and q_differ and bool(cospectral) and bool(comatching) and witnesses_ok
    return ok, (
        f"T(P_4)=T(K_1,3): {tutte_equal}, Q differs: {q_differ}; "
        f"{len(cospectral)} cospectral and {len(comatching)} co-matching pairs with distinct Q"
    )


# --- 7 ---------------------------------------------------------------------------------


def partition_functions() -> tuple[bool, str]:
    xs = (Fraction(-1), Fraction(1, 2), Fraction(1), Fraction(2))
    checked = bad = 0
    for G in _graphs_up_to(6):
        Q = q_polynomial(G)
        for y in range(4):
            for x in xs:
                checked += 1
                if partition_function(G, y, x) != Q.eval(x, y):
                    bad += 1
    return bad == 0, f"{checked} evaluations, {bad} mismatches"


# --- 8 ---------------------------------------------------------------------------------


def _contraction_multigraphs(G: Graph) -> list[MultiGraph]:
    """Multigraphs produced by contracting one or two edges of ``G`` (parallel edges and loops)."""
    M = MultiGraph.from_graph(G)
    out = []
    for i in range(len(M.edges)):
        once = M.contract_edge(i)
        out.append(once)
        for j in range(len(once.edges)):
            out.append(once.contract_edge(j))
    return out


def xi_bridge() -> tuple[bool, str]:
    simple = [G for G in _graphs_up_to(7, 1) if is_connected(G) and G.num_edges <= 7]
    simple += [T for T in free_trees(8)]
    bad = sum(not line_graph_identity_check(G) for G in simple)
    multi = [MultiGraph(1, ((0, 0),)), MultiGraph(2, ((0, 1), (0, 1))), MultiGraph(2, ((0, 0), (0, 1)))]
    for G in simple:
        if G.num_edges <= 4:
            multi += _contraction_multigraphs(G)
    with_loops = sum(any(u == v for u, v in M.edges) for M in multi)
    with_parallel = sum(len(set(M.edges)) < len(M.edges) for M in multi)
    bad_multi = sum(not line_graph_identity_check(M) for M in multi)
    return bad == 0 and bad_multi == 0 and with_loops > 0 and with_parallel > 0, (
        f"{len(simple)} simple graphs, {len(multi)} multigraphs "
        f"({with_loops} with loops, {with_parallel} with parallel edges); "
        f"{bad + bad_multi} mismatches"
    )


# --- 9 ---------------------------------------------------------------------------------


def reconstruction() -> tuple[bool, str]:
    graphs = list(_graphs_up_to(7, 3)) + _random_graphs(100, 3, 10, SEED + 9)
    graphs += [empty_graph(n) for n in range(3, 11)]
    bad = sum(reconstruct(deck(G)) != q_polynomial(G) for G in graphs)
    edgeless = sum(G.num_edges == 0 for G in graphs)
    return bad == 0, f"{len(graphs)} graphs ({edgeless} edgeless), {bad} failures"


# --- 10 --------------------------------------------------------------------------------


def reliability_check() -> tuple[bool, str]:
    graphs = _random_graphs(50, 1, 10, SEED + 10)
    trials = 100_000
    exact_ok = True
    worst_z = 0.0
    residual = []
    for idx, G in enumerate(graphs):
        Q = q_polynomial(G)
        for p in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            dist = reliability(Q, p)
            exact_ok &= sum(dist.probs) == 1 and all(0 <= pk <= 1 for pk in dist.probs)
            if idx == 0:
                residual.append(f"P_1(p={p}) = {dist.residual_connectedness}")
            mc = monte_carlo_reliability(G, float(p), trials, seed=SEED + 1000 * idx + int(4 * p))
            for est, pk in zip(mc.estimates, dist.probs):
                sd = (float(pk) * (1 - float(pk)) / trials) ** 0.5
                if sd == 0:
                    if est != float(pk):
                        worst_z = float("inf")
                    continue
                worst_z = max(worst_z, abs(est - float(pk)) / sd)
    ok = exact_ok and worst_z <= 4
    return ok, (
        f"sums exact: {exact_ok}; worst Monte Carlo deviation {worst_z:.2f} standard errors (limit 4); "
        f"residual connectedness of first graph: " + ", ".join(residual)
    )


# --- 11 --------------------------------------------------------------------------------


def invariant_extraction() -> tuple[bool, str]:
    checked = bad = 0
    for G in _graphs_up_to(8):
        Q = q_brute_force(G)
        direct_basic, direct_ind = direct_invariants(G)
        checked += 1
        if basic_invariants(Q) != direct_basic or independence(Q) != direct_ind:
            bad += 1
    return bad == 0, f"{checked} graph classes with n <= 8, {bad} mismatches"


# --- 12 --------------------------------------------------------------------------------


def universality() -> tuple[bool, str]:
    rng = random.Random(SEED + 12)
    graphs = _random_graphs(50, 1, 8, SEED + 12)
    checked = bad = 0
    for G in graphs:
        Q = q_polynomial(G)
        for _ in range(20):
            beta = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            gamma = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
            checked += 1
            if universal_recursion(G, beta, gamma) != Q.eval(gamma, beta / gamma + 1):
                bad += 1
    return bad == 0, f"{checked} evaluations on 50 graphs, {bad} mismatches"


# --- 13 --------------------------------------------------------------------------------


def infinite_families() -> tuple[bool, str]:
    T1, T2 = colliding_tree_pair()
    if canonical_form(T1) == canonical_form(T2):
        return False, "colliding trees are isomorphic"
    q1, q2 = q_polynomial(T1), q_polynomial(T2)
    results = []
    f1, f2, j1, j2 = q1, q2, q1, q2
    for k in (1, 2, 3):
        f1, f2 = f1 * q1, f2 * q2
        j1 = q_join(j1, q1, 10 * k, 10)
        j2 = q_join(j2, q2, 10 * k, 10)
        results.append(f1 == f2 and j1 == j2)
    return all(results), "F_k and J_k agree for k = 1, 2, 3: " + ", ".join(map(str, results))


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, str]]]] = [
    (1, "golden polynomial", golden_polynomial),
    (2, "closed forms vs subset expansion", closed_forms),
    (3, "explicit path solution", path_explicit_solution),
    (4, "cross-method equivalence", cross_method),
    (5, "tree census", tree_census),
    (6, "distinguishing power", distinguishing),
    (7, "homomorphism partition function", partition_functions),
    (8, "line-graph bridge", xi_bridge),
    (9, "deck reconstruction", reconstruction),
    (10, "component-count distribution", reliability_check),
    (11, "invariant extraction", invariant_extraction),
    (12, "universality", universality),
    (13, "infinite families", infinite_families),
]


def run_criterion(number: int) -> CriterionResult:
    for num, title, check in CRITERIA:
        if num == number:
            start = time.perf_counter()
            try:
                passed, detail = check()
            except Exception as exc:  # reported, not raised
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            return CriterionResult(num, title, passed, detail, time.perf_counter() - start)
    raise ValueError(f"no criterion {number}")


def run_all(numbers: Iterable[int] | None = None) -> list[CriterionResult]:
    chosen = [num for num, _, _ in CRITERIA] if numbers is None else list(numbers)
    return [run_criterion(n) for n in chosen]


__all__ = ["CRITERIA", "CriterionResult", "colliding_tree_pair", "run_all", "run_criterion"]
