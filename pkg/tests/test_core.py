from __future__ import annotations

import random
import threading
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from qpoly.core import (
    QCache,
    check_normalization,
    closed_form,
    compute_q,
    q_articulation_split,
    q_brute_force,
    q_clique_separator_split,
    q_eval_tractable,
    q_join,
    q_path_closed_form_check,
    q_polynomial,
    q_recursive,
    q_split,
    universal_recursion,
)
from qpoly.errors import BoundsError, InconsistencyError
from qpoly.generate import all_graphs
from qpoly.graph import (
    CliqueSeparation,
    Graph,
    complete_graph,
    delete_vertex,
    disjoint_union,
    empty_graph,
    find_clique_separator,
    induced_subgraph,
    join,
    path_graph,
    random_graph,
    star_graph,
)
from qpoly.poly import ONE, X, Y, BiPoly

STAR3 = BiPoly({(0, 0): 1, (1, 1): 4, (2, 1): 3, (3, 1): 3, (4, 1): 1, (2, 2): 3, (3, 3): 1})
P3 = BiPoly({(0, 0): 1, (1, 1): 3, (2, 1): 2, (2, 2): 1, (3, 1): 1})
K3 = BiPoly({(0, 0): 1, (1, 1): 3, (2, 1): 3, (3, 1): 1})
P2 = BiPoly({(0, 0): 1, (1, 1): 2, (2, 1): 1})
DIAMOND = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
PAN = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


def test_brute_force_examples():
    assert q_brute_force(star_graph(3)) == STAR3
    assert q_brute_force(Graph(0, ())) == ONE
    assert q_brute_force(path_graph(3)) == P3
    with pytest.raises(BoundsError):
        q_brute_force(empty_graph(25))


def test_recursive_examples():
    assert q_recursive(empty_graph(1)) == ONE + X * Y
    assert q_recursive(complete_graph(3)) == K3
    assert q_recursive(disjoint_union(path_graph(2), path_graph(2))) == P2 * P2


def test_closed_form_examples():
    assert closed_form("complete", 3) == K3
    assert closed_form("empty", 2) == BiPoly({(0, 0): 1, (1, 1): 2, (2, 2): 1})
    assert closed_form("path", 2) == P2
    assert closed_form("star", 3) == STAR3
    assert closed_form("cycle", 3) == K3
    for bad in (("cycle", 2), ("complete", -1), ("wheel", 4), ("complete-bipartite", 1)):
        with pytest.raises(ValueError):
            closed_form(*bad)


def test_complete_closed_form_is_the_stated_formula():
    for n in range(8):
        assert closed_form("complete", n) == Y * (ONE + X) ** n - Y + 1


def test_path_explicit_solution_examples():
    a, b = q_path_closed_form_check(1, 1.0, 2.0)
    assert a == pytest.approx(3.0) and b == pytest.approx(3.0)
    a, b = q_path_closed_form_check(4, 0.5, 2.0)
    assert abs(a - b) <= 1e-9 * abs(b)
    a, b = q_path_closed_form_check(0, 1.0, 1.0)
    assert a == pytest.approx(1.0) and b == 1.0
    with pytest.raises(ValueError):
        # 1 - 2x + x^2 + 4xy = 0 at x = 1, y = 0
        q_path_closed_form_check(3, 1.0, 0.0)


def test_join_examples():
    E1 = q_brute_force(empty_graph(1))
    assert q_join(E1, E1, 1, 1) == P2
    assert q_join(E1, q_brute_force(empty_graph(3)), 1, 3) == STAR3
    for s in range(5):
        for t in range(5):
            assert q_join(closed_form("empty", s), closed_form("empty", t), s, t) == closed_form(
                "complete-bipartite", s, t
            )
    with pytest.raises(InconsistencyError):
        q_join(E1, E1, 2, 1)


@given(graphs(0, 6), graphs(0, 6))
def test_join_identity(G, H):
    direct = q_brute_force(join(G, H))
    assert direct == q_join(q_brute_force(G), q_brute_force(H), G.n, H.n)


@given(graphs(0, 7), graphs(0, 7))
def test_multiplicativity(G, H):
    assert q_recursive(disjoint_union(G, H)) == q_recursive(G) * q_recursive(H)


def _articulation_via_split(G: Graph, v: int, h: int, k: int) -> BiPoly:
    H, K = induced_subgraph(G, h), induced_subgraph(G, k)
    vh = (h & ((1 << v) - 1)).bit_count()
    vk = (k & ((1 << v) - 1)).bit_count()
    return q_articulation_split(
        q_brute_force(H), q_brute_force(delete_vertex(H, vh)),
        q_brute_force(K), q_brute_force(delete_vertex(K, vk)),
    )


def test_articulation_examples():
    assert _articulation_via_split(path_graph(3), 1, 0b011, 0b110) == P3
    assert _articulation_via_split(PAN, 2, 0b0111, 0b1100) == q_brute_force(PAN)


def test_articulation_split_rejects_non_divisible_input():
    with pytest.raises(InconsistencyError):
        q_articulation_split(ONE + X, ONE, ONE + X, ONE)


def test_clique_separator_examples():
    sep = find_clique_separator(DIAMOND, min_size=2)
    assert q_clique_separator_split(DIAMOND, sep) == q_brute_force(DIAMOND)
    G = Graph.from_edges(5, [(a, b) for a in range(4) for b in range(a + 1, 4)] + [(1, 4), (2, 4), (3, 4)])
    sep = find_clique_separator(G, min_size=3)
    assert sep.clique.bit_count() == 3
    assert q_clique_separator_split(G, sep) == q_brute_force(G)
    single = find_clique_separator(path_graph(3))
    assert q_clique_separator_split(path_graph(3), single) == _articulation_via_split(
        path_graph(3), 1, 0b011, 0b110
    )


def test_clique_separator_rejects_invalid_separations():
    G = path_graph(4)
    bad = (
        CliqueSeparation(0b0010, 0b0011, 0b1100),  # sides do not meet in the clique
        CliqueSeparation(0b0101, 0b0111, 0b1101),  # not a clique
        CliqueSeparation(0b0010, 0b0111, 0b1010),  # edge 2-3 crosses the split
    )
    for sep in bad:
        with pytest.raises(InconsistencyError):
            q_clique_separator_split(G, sep)


@given(graphs(1, 9))
def test_clique_separator_matches_oracle(G):
    sep = find_clique_separator(G, max_size=4)
    if sep is not None:
        assert q_clique_separator_split(G, sep) == q_brute_force(G)


def test_recursion_matches_oracle_on_all_graphs_up_to_8():
    for n in range(9):
        for G in all_graphs(n, limit=8):
            assert q_recursive(G) == q_brute_force(G)


def test_recursion_matches_oracle_on_random_graphs():
    rng = random.Random(99)
    for _ in range(200):
        G = random_graph(rng.randint(1, 12), rng.uniform(0.1, 0.9), rng)
        assert q_recursive(G) == q_brute_force(G) == q_split(G)


def test_pivot_independence():
    rng = random.Random(5)
    for _ in range(50):
        G = random_graph(rng.randint(1, 9), rng.uniform(0.2, 0.8), rng)
        pick = random.Random(rng.random())
        value = q_recursive(G, cache=QCache(), pivot=lambda H: pick.randrange(H.n))
        assert value == q_brute_force(G)


@given(graphs(0, 9))
def test_normalisations(G):
    Q = q_polynomial(G)
    check_normalization(Q, G.n)
    assert Q.coeff(0, 0) == 1
    assert Q.substitute(X, ONE) == (ONE + X) ** G.n
    assert Q.deg_x == (G.n if G.n else 0)


def test_normalisation_rejects_bad_polynomials():
    with pytest.raises(InconsistencyError):
        check_normalization(ONE + X * Y + X, 1)
    with pytest.raises(InconsistencyError):
        check_normalization(X * Y, 1)


def test_tractable_lines():
    for G in (path_graph(5), complete_graph(4), empty_graph(3)):
        Q = q_polynomial(G)
        assert Q.substitute(X, BiPoly()) == ONE
        for x in (Fraction(-2), Fraction(1, 3)):
            assert q_eval_tractable(G.n, x, 1) == Q.eval(x, 1)
            assert q_eval_tractable(G.n, x, 0) == Q.eval(x, 0) == 1
            assert q_eval_tractable(G.n, 0, x) == Q.eval(0, x) == 1
    with pytest.raises(ValueError):
        q_eval_tractable(3, 2, 2)


def test_universal_recursion_examples():
    b, g = Fraction(3, 5), Fraction(-2, 7)
    assert universal_recursion(empty_graph(1), b, g) == 1 + b + g
    assert universal_recursion(path_graph(3), 2, 1) == P3.eval(1, 3)
    for G in (star_graph(4), complete_graph(3), empty_graph(3)):
        assert universal_recursion(G, 0, 1) == 2**G.n


@given(graphs(0, 8), st.fractions(-4, 4, max_denominator=6), st.fractions(-4, 4, max_denominator=6))
def test_universality(G, beta, gamma):
    if gamma != 0:
        assert universal_recursion(G, beta, gamma) == q_polynomial(G).eval(gamma, beta / gamma + 1)


def test_compute_q_methods_agree():
    G = random_graph(10, 0.4, random.Random(2))
    results = {m: compute_q(G, m) for m in ("auto", "brute", "recursive", "split", "treewidth")}
    assert len({r.poly for r in results.values()}) == 1
    assert results["auto"].method == "split"
    assert results["recursive"].stats["nodes"] > 0
    with pytest.raises(ValueError):
        compute_q(G, "magic")


def test_cache_is_bounded_lru(monkeypatch):
    cache = QCache(maxsize=2)
    cache.put("a", ONE)
    cache.put("b", X)
    assert cache.get("a") == ONE
    cache.put("c", Y)
    assert cache.get("b") is None and cache.get("a") == ONE and len(cache) == 2
    monkeypatch.setenv("QPOLY_CACHE_SIZE", "7")
    assert QCache().maxsize == 7


def test_shared_cache_under_threads():
    cache = QCache()
    rng = random.Random(11)
    graphs_ = [random_graph(11, 0.5, rng) for _ in range(8)]
    results: dict[int, BiPoly] = {}

    def work(i):
        results[i] = q_recursive(graphs_[i], cache=cache)

    threads = [threading.Thread(target=work, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(results[i] == q_brute_force(graphs_[i]) for i in range(8))


def test_large_graph_memo_falls_back_to_labelled_key():
    G = disjoint_union(path_graph(9), random_graph(9, 0.5, random.Random(4)))
    G = join(G, empty_graph(1))  # 19 vertices, connected, above the canonical bound
    assert q_split(G) == q_recursive(G)
