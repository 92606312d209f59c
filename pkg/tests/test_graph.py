import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_extremal.errors import CapabilityError, DomainError, InputError
from spectral_extremal.graph import (
    Graph,
    canonical_form,
    canonical_graph,
    coalesce,
    complete_graph,
    complete_minus_edge,
    components,
    cycle_graph,
    degree_profile,
    diameter,
    disjoint_union,
    find_induced_embedding,
    graph_from_edges,
    is_connected,
    is_isomorphic,
    iter_induced_embeddings,
    path_graph,
    star_graph,
)

from conftest import from_nx, graphs, to_nx


def test_rejects_bad_input():
    with pytest.raises(InputError):
        graph_from_edges(3, [(0, 0)])
    with pytest.raises(InputError):
        graph_from_edges(3, [(0, 3)])
    with pytest.raises(InputError):
        Graph(2, [[1], []])


def test_basic_queries():
    g = complete_minus_edge(5)
    assert g.m == 9
    assert g.degrees() == [4, 4, 4, 3, 3]
    assert not g.has_edge(3, 4)
    assert g.with_edges(add=[(3, 4)]) == complete_graph(5)
    assert star_graph(3).degrees() == [3, 1, 1, 1]
    assert degree_profile(cycle_graph(6)).is_regular


def test_adjacency_and_laplacian_form():
    g = cycle_graph(5)
    a = g.adjacency_matrix()
    assert np.array_equal(a, g.sparse_adjacency().toarray())
    y = np.arange(5.0)
    lap = np.diag(a.sum(1)) - a
    assert g.laplacian_form(y) == pytest.approx(y @ lap @ y)


@given(graphs(max_n=10))
@settings(max_examples=80, deadline=None)
def test_connectivity_matches_networkx(g):
    assert is_connected(g) == nx.is_connected(to_nx(g))
    assert len(components(g)) == nx.number_connected_components(to_nx(g))


@given(graphs(min_n=2, max_n=40, connected=True))
@settings(max_examples=60, deadline=None)
def test_diameter_matches_networkx(g):
    assert diameter(g) == nx.diameter(to_nx(g))


def test_diameter_of_long_path_and_disconnected():
    assert diameter(path_graph(500)) == 499
    with pytest.raises(DomainError):
        diameter(disjoint_union(path_graph(2), path_graph(2)))


@given(graphs(max_n=9), st.randoms(use_true_random=False))
@settings(max_examples=80, deadline=None)
def test_canonical_form_is_invariant(g, r):
    perm = list(range(g.n))
    r.shuffle(perm)
    h = g.relabel(perm)
    assert canonical_form(g) == canonical_form(h)
    assert is_isomorphic(canonical_graph(g), g)


@given(graphs(min_n=5, max_n=8), graphs(min_n=5, max_n=8))
@settings(max_examples=80, deadline=None)
def test_canonical_form_separates_like_networkx(g, h):
    same = canonical_form(g) == canonical_form(h)
    assert same == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_canonical_form_on_all_six_vertex_graphs():
    atlas = [from_nx(h) for h in nx.graph_atlas_g() if h.number_of_nodes() == 6]
    codes = {canonical_form(g) for g in atlas}
    assert len(codes) == len(atlas) == 156


def test_canonical_cap():
    with pytest.raises(CapabilityError):
        canonical_form(path_graph(13))


def test_coalesce_numbering():
    g = coalesce(path_graph(3), 2, complete_graph(3), 0)
    assert g.n == 5
    assert g.adj[2] == (1, 3, 4)
    assert is_isomorphic(g, graph_from_edges(5, [(0, 1), (1, 2), (2, 3), (2, 4), (3, 4)]))


def _brute_embeddings(g, pattern, boundary=(), degs=None):
    out = []
    bset = set(boundary)
    for tup in itertools.permutations(range(g.n), pattern.n):
        ok = True
        for i, j in itertools.combinations(range(pattern.n), 2):
            e = g.has_edge(tup[i], tup[j])
            if pattern.has_edge(i, j) and not e:
                ok = False
            elif not pattern.has_edge(i, j) and e and not (i in bset and j in bset):
                ok = False
        if ok and degs is not None:
            ok = all(g.degree(h) == d for h, d in zip(tup, degs))
        if ok:
            out.append(tup)
    return out


@given(graphs(min_n=4, max_n=7), graphs(min_n=2, max_n=4), st.data())
@settings(max_examples=60, deadline=None)
def test_embeddings_match_brute_force(g, pattern, data):
    boundary = data.draw(st.sets(st.integers(0, pattern.n - 1)))
    got = [e.mapping for e in iter_induced_embeddings(g, pattern, boundary)]
    assert got == sorted(got)
    assert got == _brute_embeddings(g, pattern, boundary)


def test_embedding_with_degrees():
    host = cycle_graph(6).with_edges(add=[(0, 3)])
    pat = path_graph(2)
    got = [e.mapping for e in iter_induced_embeddings(host, pat, (), (3, 2))]
    assert got == _brute_embeddings(host, pat, (), (3, 2))
    assert find_induced_embedding(host, complete_graph(3)) is None
