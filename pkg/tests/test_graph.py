from __future__ import annotations

import random
from itertools import permutations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from qpoly.canon import canonical_form, canonical_relabeling, multigraph_canonical_form
from qpoly.errors import BoundsError, ParseError
from qpoly.generate import all_graphs, all_graphs_by_mask_sweep, enumerate_graphs, free_trees
from qpoly.graph import (
    Graph,
    MultiGraph,
    articulation_points,
    complement,
    complete_bipartite,
    complete_graph,
    connected_components,
    contract_vertex,
    cycle_graph,
    delete_vertex,
    disjoint_union,
    empty_graph,
    extract_closed_neighborhood,
    find_clique_separator,
    join,
    line_graph,
    num_components,
    path_graph,
    random_graph,
    relabel,
    star_graph,
)
from qpoly.io import parse, parse_edge_list, parse_graph6, to_edge_list, to_graph6

P3 = path_graph(3)


def iso(a: Graph, b: Graph) -> bool:
    return a.n == b.n and canonical_form(a) == canonical_form(b)


def to_nx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


# --- parsing -----------------------------------------------------------------------


def test_graph6_three_vertex_path():
    # "Bg" is the path 0-1-2; "B_" has the single edge 0-1
    assert parse_graph6("Bg") == P3
    assert parse_graph6("B_") == Graph.from_edges(3, [(0, 1)])
    assert iso(parse_graph6("Bo"), P3)


def test_graph6_header_and_round_trip():
    G = random_graph(9, 0.4, random.Random(3))
    text = to_graph6(G)
    assert parse_graph6(text) == G
    assert parse_graph6(">>graph6<<" + text) == G
    assert nx.to_graph6_bytes(to_nx(G), header=False).strip().decode() == text
    assert sorted(nx.from_graph6_bytes(text.encode()).edges()) == G.edges()


@pytest.mark.parametrize("bad", ["", "B", "Bgg", "B~", "B`", "~"])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(ParseError):
        parse_graph6(bad)


def test_edge_list_examples():
    assert parse_edge_list("0 1\n1 2") == P3
    assert parse("edge-list", b"# comment\n0 1 # trailing\n\n1 2\n") == P3
    assert parse_edge_list("", n=2) == empty_graph(2)
    assert to_edge_list(P3) == "0 1\n1 2\n"


@pytest.mark.parametrize(
    "text, n",
    [("0 0", None), ("0 1\n1 0", None), ("0 -1", None), ("0 5", 3), ("0 1 2", None), ("a b", None)],
)
def test_edge_list_rejects(text, n):
    with pytest.raises(ParseError):
        parse_edge_list(text, n)


def test_parse_rejects_unknown_format_and_count_mismatch():
    with pytest.raises(ParseError):
        parse("dimacs", "")
    with pytest.raises(ParseError):
        parse("graph6", "Bg", n=4)


# --- elimination operations --------------------------------------------------------------


def test_delete_vertex_examples():
    assert delete_vertex(P3, 1) == empty_graph(2)
    for v in range(3):
        assert delete_vertex(complete_graph(3), v) == path_graph(2)
    assert delete_vertex(empty_graph(1), 0) == Graph(0, ())
    with pytest.raises(IndexError):
        delete_vertex(P3, 3)


def test_delete_keeps_relative_order():
    G = Graph.from_edges(4, [(0, 3), (1, 2)])
    assert delete_vertex(G, 1) == Graph.from_edges(3, [(0, 2)])


def test_contract_vertex_examples():
    assert contract_vertex(star_graph(3), 0) == complete_graph(3)
    assert contract_vertex(P3, 1) == path_graph(2)
    G = disjoint_union(P3, empty_graph(1))
    assert contract_vertex(G, 3) == delete_vertex(G, 3)
    with pytest.raises(IndexError):
        contract_vertex(P3, -1)


def test_extract_examples():
    assert extract_closed_neighborhood(star_graph(3), 0) == Graph(0, ())
    assert extract_closed_neighborhood(path_graph(4), 0) == path_graph(2)
    assert extract_closed_neighborhood(empty_graph(4), 2) == empty_graph(3)
    with pytest.raises(IndexError):
        extract_closed_neighborhood(P3, 7)


@given(graphs(1, 8), st.data())
def test_contraction_equals_deletion_for_low_degree(G, data):
    v = data.draw(st.integers(0, G.n - 1))
    if G.degree(v) <= 1:
        assert contract_vertex(G, v) == delete_vertex(G, v)


@given(graphs(1, 8), st.data())
def test_contraction_makes_neighbourhood_a_clique(G, data):
    v = data.draw(st.integers(0, G.n - 1))
    H = contract_vertex(G, v)
    nbrs = [u - (u > v) for u in range(G.n) if G.has_edge(u, v)]
    assert all(H.has_edge(a, b) for a in nbrs for b in nbrs if a != b)
    assert all(not H.has_edge(a, a) for a in range(H.n))


# --- structure ------------------------------------------------------------------------------


def test_components_examples():
    assert connected_components(empty_graph(3)) == [frozenset({0}), frozenset({1}), frozenset({2})]
    assert connected_components(P3) == [frozenset({0, 1, 2})]
    assert len(connected_components(disjoint_union(path_graph(2), empty_graph(1)))) == 2
    assert num_components(Graph(0, ())) == 0


@given(graphs())
def test_components_match_networkx(G):
    ours = sorted(map(sorted, connected_components(G)))
    theirs = sorted(map(sorted, nx.connected_components(to_nx(G))))
    assert ours == theirs


def test_union_and_join_examples():
    K1 = empty_graph(1)
    assert disjoint_union(K1, K1) == empty_graph(2)
    assert disjoint_union(path_graph(2), path_graph(2)) == Graph.from_edges(4, [(0, 1), (2, 3)])
    assert disjoint_union(P3, Graph(0, ())) == P3
    assert join(K1, K1) == complete_graph(2)
    assert join(K1, empty_graph(3)) == star_graph(3)
    assert join(empty_graph(2), empty_graph(3)) == complete_bipartite(2, 3)


def test_line_graph_examples():
    assert line_graph(P3) == path_graph(2)
    assert line_graph(star_graph(3)) == complete_graph(3)
    assert line_graph(MultiGraph(1, ((0, 0),))) == empty_graph(1)
    assert line_graph(MultiGraph(2, ((0, 1), (0, 1)))) == complete_graph(2)
    # a loop touches every edge at its vertex
    assert line_graph(MultiGraph(3, ((0, 0), (0, 1), (1, 2)))) == path_graph(3)


@given(graphs(0, 7))
def test_line_graph_matches_networkx(G):
    L = line_graph(G)
    assert iso(L, _relabel_nx(nx.line_graph(to_nx(G))))


def _relabel_nx(H: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(H.nodes())}
    return Graph.from_edges(len(index), ((index[a], index[b]) for a, b in H.edges()))


def test_articulation_examples():
    assert articulation_points(P3) == frozenset({1})
    assert articulation_points(complete_graph(4)) == frozenset()


@given(graphs(0, 9))
def test_articulation_points_match_networkx(G):
    assert articulation_points(G) == frozenset(nx.articulation_points(to_nx(G)))


def test_clique_separator_examples():
    diamond = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    sep = find_clique_separator(diamond)
    assert sep is not None and sep.clique == 0b0110
    assert sep.h.bit_count() == 3 and sep.k.bit_count() == 3
    assert find_clique_separator(complete_graph(4)) is None
    sep = find_clique_separator(P3)
    assert sep.clique == 0b010


def test_clique_separator_splits_three_components():
    G = star_graph(3)
    sep = find_clique_separator(G)
    assert sep.clique == 1 and sep.h | sep.k == G.full_mask and sep.h & sep.k == sep.clique
    assert sep.h.bit_count() == 3 and sep.k.bit_count() == 2


# --- canonical forms ----------------------------------------------------------------------


def test_canonical_form_examples():
    assert canonical_form(P3) == canonical_form(Graph.from_edges(3, [(1, 0), (0, 2)]))
    assert canonical_form(P3) != canonical_form(complete_graph(3))
    assert canonical_form(star_graph(3)) != canonical_form(path_graph(4))


def test_canonical_form_invariance_on_random_relabelings():
    rng = random.Random(7)
    for _ in range(100):
        G = random_graph(rng.randint(0, 7), rng.random(), rng)
        perm = list(range(G.n))
        rng.shuffle(perm)
        assert canonical_form(relabel(G, perm)) == canonical_form(G)


def test_canonical_form_separates_exactly_the_isomorphism_classes():
    atlas = [G for G in nx.graph_atlas_g() if G.number_of_nodes() <= 6]
    keys = {canonical_form(_relabel_nx(H)) for H in atlas}
    assert len(keys) == len(atlas)


def test_canonical_relabeling_gives_representative():
    G = random_graph(7, 0.5, random.Random(1))
    H = relabel(G, canonical_relabeling(G))
    assert canonical_form(H) == canonical_form(G)
    assert relabel(H, canonical_relabeling(H)) == H


def test_canonical_form_bound():
    with pytest.raises(BoundsError):
        canonical_form(empty_graph(5), bound=4)


def test_multigraph_canonical_form_sees_multiplicity_and_loops():
    a = MultiGraph(2, ((0, 1),))
    b = MultiGraph(2, ((0, 1), (0, 1)))
    c = MultiGraph(2, ((0, 0), (0, 1)))
    d = MultiGraph(2, ((1, 1), (0, 1)))
    assert len({multigraph_canonical_form(m) for m in (a, b, c)}) == 3
    assert multigraph_canonical_form(c) == multigraph_canonical_form(d)


# --- enumeration ----------------------------------------------------------------------------


def test_free_tree_examples():
    trees = list(free_trees(4))
    assert len(trees) == 2
    assert {canonical_form(T) for T in trees} == {canonical_form(path_graph(4)), canonical_form(star_graph(3))}
    assert len(list(free_trees(1))) == 1


def _prufer_tree(seq: tuple[int, ...], n: int) -> Graph:
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(n) if degree[x] == 1]
    edges.append((u, w))
    return Graph.from_edges(n, edges)


def _tree_code(G: Graph) -> str:
    """Centre-rooted AHU string, minimised over the (at most two) centres."""
    nbrs = [[u for u in range(G.n) if G.has_edge(u, v)] for v in range(G.n)]
    alive, layer = set(range(G.n)), [v for v in range(G.n) if len(nbrs[v]) <= 1]
    deg = [len(x) for x in nbrs]
    while len(alive) > 2:
        nxt = []
        for v in layer:
            alive.discard(v)
            for u in nbrs[v]:
                deg[u] -= 1
                if deg[u] == 1:
                    nxt.append(u)
        layer = nxt

    def code(v, parent):
        return "(" + "".join(sorted(code(u, v) for u in nbrs[v] if u != parent)) + ")"

    return min(code(c, -1) for c in alive)


@pytest.mark.parametrize("n", range(1, 9))
def test_free_tree_counts_match_labelled_tree_oracle(n):
    if n <= 2:
        expected = 1
    else:
        from itertools import product

        expected = len({_tree_code(_prufer_tree(s, n)) for s in product(range(n), repeat=n - 2)})
    ours = list(free_trees(n))
    assert len(ours) == expected
    assert len({_tree_code(T) for T in ours}) == expected


def test_free_tree_counts_match_networkx_up_to_bound():
    for n in range(2, 13):
        assert len(list(free_trees(n))) == sum(1 for _ in nx.nonisomorphic_trees(n))
    with pytest.raises(BoundsError):
        list(free_trees(13))


def test_all_graph_counts():
    assert [len(list(all_graphs(n))) for n in range(8)] == [1, 1, 2, 4, 11, 34, 156, 1044]
    assert len(list(enumerate_graphs("all-graphs", 3))) == 4
    with pytest.raises(BoundsError):
        list(all_graphs(8))


def test_all_graphs_agrees_with_mask_sweep_and_atlas():
    for n in range(6):
        ours = {canonical_form(G) for G in all_graphs(n)}
        assert ours == {canonical_form(G) for G in all_graphs_by_mask_sweep(n)}
    atlas = {canonical_form(_relabel_nx(H)) for H in nx.graph_atlas_g()}
    ours = {canonical_form(G) for n in range(8) for G in all_graphs(n)}
    assert ours == atlas


def test_unknown_family():
    with pytest.raises(ValueError):
        enumerate_graphs("cubic", 4)


def test_named_families():
    assert cycle_graph(5).num_edges == 5
    assert complement(complete_graph(4)) == empty_graph(4)
    assert complete_bipartite(2, 3).num_edges == 6
    with pytest.raises(ValueError):
        cycle_graph(2)


def test_small_permutation_sanity():
    # every relabelling of P_4 has the same key
    base = canonical_form(path_graph(4))
    for perm in permutations(range(4)):
        assert canonical_form(relabel(path_graph(4), perm)) == base
