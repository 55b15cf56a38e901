import json
import warnings

import numpy as np
import pytest

from p3hull import (
    AmbientMismatch,
    Caps,
    IdOutOfRange,
    LimitExceeded,
    build_graph,
    coordinate_subspace,
    count_a,
    CountParams,
    degree_report,
    export_edge_list,
    gaussian_binomial,
    intersection_dim,
    neighbors,
    partition_by_intersection,
    read_edge_list,
)
from p3hull.qcomb import kneser_degree, kneser_edge_count


@pytest.mark.parametrize("q,n,k,deg,edges", [(2, 4, 2, 16, 280), (2, 5, 2, 112, None)])
def test_kneser_examples(graph, q, n, k, deg, edges):
    g = graph("qkneser", q, n, k)
    rep = degree_report(g)
    assert rep.vertices == gaussian_binomial(n, k, q)
    assert rep.is_regular and rep.degree == deg
    if edges is not None:
        assert rep.edge_count == edges


def test_k263_report(graph):
    rep = degree_report(graph("qkneser", 2, 6, 3))
    assert (rep.vertices, rep.degree, rep.is_regular) == (1395, 512, True)


@pytest.mark.parametrize("fam,q,n,k", [("qkneser", 2, 4, 2), ("grassmann", 2, 4, 2), ("grassmann", 3, 4, 2),
                                       ("qkneser", 3, 4, 2), ("grassmann", 2, 5, 2)])
def test_edges_match_rank_predicate(graph, fam, q, n, k):
    """Every pair is checked by rank against the incidence-based adjacency."""
    g = graph(fam, q, n, k)
    want = 0 if fam == "qkneser" else k - 1
    V = g.vertices
    for u in range(len(V)):
        brute = [v for v in range(len(V)) if v != u and intersection_dim(V[u], V[v]) == want]
        assert g.neighbors(u).tolist() == brute


def test_grassmann_degree_by_brute_force(graph):
    assert degree_report(graph("grassmann", 2, 4, 2)).degree == 18
    g = graph("grassmann", 3, 4, 2)
    V = g.vertices
    brute = sum(1 for w in V if intersection_dim(V[0], w) == 1)
    rep = degree_report(g)
    assert rep.is_regular and rep.degree == brute == 48


def test_neighbors_examples(graph):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        g = build_graph("qkneser", 2, 3, 1)
    assert g.outside_regime is False
    assert g.num_vertices == 7
    for v in range(7):
        assert neighbors(g, v).tolist() == [u for u in range(7) if u != v]
    K = graph("qkneser", 2, 4, 2)
    v = K.id_of(coordinate_subspace(4, [0, 1], K.field))
    nb = neighbors(K, v)
    assert nb.size == 16 and all(intersection_dim(K.vertex(v), K.vertex(int(u))) == 0 for u in nb)
    J = graph("grassmann", 2, 4, 2)
    nb = neighbors(J, v)
    assert nb.size == 18 and all(intersection_dim(J.vertex(v), J.vertex(int(u))) == 1 for u in nb)
    with pytest.raises(IdOutOfRange):
        neighbors(K, 35)


def test_regime_warning():
    with pytest.warns(UserWarning):
        g = build_graph("qkneser", 2, 3, 2)
    assert g.outside_regime


@pytest.mark.parametrize("q,n,k", [(2, 4, 2), (2, 5, 2), (2, 6, 2), (3, 4, 2), (3, 5, 2), (2, 6, 3)])
def test_regularity_formula(graph, q, n, k):
    g = graph("qkneser", q, n, k)
    assert (g.degrees() == kneser_degree(n, k, q)).all()
    assert g.edge_count == kneser_edge_count(n, k, q)


@pytest.mark.parametrize("fam", ["qkneser", "grassmann"])
def test_symmetric_irreflexive_sorted(graph, fam):
    g = graph(fam, 2, 5, 2)
    A = g.adjacency_matrix()
    assert (A != A.T).nnz == 0
    assert A.diagonal().sum() == 0
    for v in range(g.num_vertices):
        assert (np.diff(g.neighbors(v)) > 0).all()


def test_partition_examples(graph):
    K = graph("qkneser", 2, 4, 2)
    parts = partition_by_intersection(K, coordinate_subspace(4, [0, 1], K.field))
    assert [p.size for p in parts] == [16, 18, 1]
    parts = partition_by_intersection(K, coordinate_subspace(4, [], K.field))
    assert [p.size for p in parts] == [35, 0, 0]
    K5 = graph("qkneser", 2, 5, 2)
    parts = partition_by_intersection(K5, coordinate_subspace(5, [0, 1, 2], K5.field))
    assert sum(p.size for p in parts) == 155
    assert [p.size for p in parts] == [count_a(CountParams(n=5, m=3, k=2, i=i, q=2)) for i in range(3)]
    with pytest.raises(AmbientMismatch):
        partition_by_intersection(K, coordinate_subspace(5, [0], K.field))


def test_partition_matches_rank(graph):
    g = graph("qkneser", 3, 4, 2)
    u = coordinate_subspace(4, [0, 2, 3], g.field)
    dims = g.intersection_dims(u)
    assert dims.tolist() == [intersection_dim(w, u) for w in g.vertices]


def test_caps():
    with pytest.raises(LimitExceeded):
        build_graph("qkneser", 2, 12, 6)
    with pytest.raises(LimitExceeded):
        build_graph("qkneser", 2, 6, 3, caps=Caps(max_vertices=1000))
    with pytest.raises(LimitExceeded):
        build_graph("qkneser", 2, 6, 3, caps=Caps(max_edge_checks=10_000))


def test_thread_count_does_not_change_result():
    a = build_graph("grassmann", 2, 6, 3, threads=1)
    b = build_graph("grassmann", 2, 6, 3, threads=4)
    assert (a.indptr == b.indptr).all() and (a.indices == b.indices).all()


def test_id_lookup_round_trip(graph):
    g = graph("grassmann", 3, 4, 2)
    for i, v in enumerate(g.vertices):
        assert g.id_of(v) == i
        assert g.id_lookup[v.canonical()] == i


def test_export_round_trip(graph, tmp_path):
    g = graph("qkneser", 2, 5, 2)
    edges, sidecar = export_edge_list(g, tmp_path / "k252.edges")
    lines = edges.read_text().splitlines()
    assert lines[0] == "# qkneser 2 5 2"
    assert len(lines) == 1 + g.edge_count
    pairs = [tuple(map(int, ln.split())) for ln in lines[1:]]
    assert all(u < v for u, v in pairs)
    header, indptr, indices = read_edge_list(edges)
    assert header == {"family": "qkneser", "q": 2, "n": 5, "k": 2}
    assert (indptr == g.indptr).all() and (indices == g.indices).all()
    mapping = json.loads(sidecar.read_text())
    assert len(mapping) == g.num_vertices
    assert mapping["0"] == g.vertex(0).canonical() == "1 0 0 0 0;0 1 0 0 0"
