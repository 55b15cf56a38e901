import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from p3hull import (
    IdOutOfRange,
    LimitExceeded,
    Subspace,
    VertexSet,
    build_graph,
    count_case2_common,
    find_hull_pair,
    hull,
    hull_by_sweeps,
    interval,
    intersection_dim,
    is_hull_set,
    kneser_case1_pair,
    verify_no_singleton_hull,
)
from p3hull.hull import trace_to_dict, trace_to_json

GRAPHS = [("qkneser", 2, 4, 2), ("grassmann", 2, 4, 2), ("qkneser", 2, 5, 2)]


def test_interval_examples(graph):
    g = graph("qkneser", 2, 4, 2)
    assert len(interval(g, [])) == 0
    assert set(interval(g, [5])) == {5}
    V = g.vertices
    u, v = next((a, b) for a in range(35) for b in range(a + 1, 35) if intersection_dim(V[a], V[b]) == 1)
    I = interval(g, [u, v])
    assert len(I) == 2 + count_case2_common(2, 1, 2) == 10
    with pytest.raises(IdOutOfRange):
        interval(g, [35])


def test_hull_examples(graph):
    g = graph("qkneser", 2, 4, 2)
    H, tr = hull(g, [])
    assert len(H) == 0 and tr.converged_at == 0
    for a in range(35):
        for b in range(a + 1, 35):
            if not g.is_adjacent(a, b):
                assert len(hull(g, [a, b])[0]) == 35
    J = graph("grassmann", 2, 4, 2)
    a = J.id_of(Subspace.from_canonical("1 0 0 0;0 1 0 0", J.field, 4))
    b = J.id_of(Subspace.from_canonical("0 0 1 0;0 0 0 1", J.field, 4))
    assert is_hull_set(J, [a, b])


def test_is_hull_set_examples(graph):
    g = graph("qkneser", 2, 5, 2)
    assert is_hull_set(g, range(g.num_vertices))
    assert not is_hull_set(g, [0])
    w1, w2, _ = kneser_case1_pair(2, 5, 2)
    assert is_hull_set(g, [g.id_of(w1), g.id_of(w2)])


def test_adjacent_pair_in_k242_spreads_too(graph):
    # complementary planes w1, w2 of F_2^4: common neighbours are the graphs of
    # linear isomorphisms w1 -> w2, so there are |GL_2(F_2)| = 6 of them
    g = graph("qkneser", 2, 4, 2)
    b = int(g.neighbors(0)[0])
    common = np.intersect1d(g.neighbors(0), g.neighbors(b))
    assert common.size == oracle.gl_order(2, 2) == 6
    assert len(interval(g, [0, b])) == 8
    assert is_hull_set(g, [0, b])


def test_singleton_check(graph):
    for spec in GRAPHS:
        assert verify_no_singleton_hull(graph(*spec))
    with pytest.warns(UserWarning):
        g = build_graph("qkneser", 2, 1, 1)
        assert verify_no_singleton_hull(g)


def _random_sets(N, count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        size = int(rng.integers(0, 6))
        yield sorted(set(rng.integers(0, N, size=size).tolist()))


@pytest.mark.parametrize("spec", GRAPHS)
def test_hull_properties_seeded(graph, spec):
    g = graph(*spec)
    N = g.num_vertices
    rng = np.random.default_rng(7)
    for T in _random_sets(N, 100, seed=11):
        H, tr = hull(g, T)
        # least fixpoint equals the naive sweep
        assert H == hull_by_sweeps(g, T)
        # convex
        assert interval(g, H) == H
        # replay and disjoint rounds
        assert tr.replay(N) == H
        seen = set(T)
        for r in tr.rounds:
            assert not seen & set(r.tolist())
            seen |= set(r.tolist())
        assert tr.converged_at <= N
        # synchronous rounds
        cur = VertexSet(N, T)
        for r in tr.rounds:
            nxt = interval(g, cur)
            assert set(np.flatnonzero(nxt.mask & ~cur.mask).tolist()) == set(r.tolist())
            cur = nxt
        # monotone
        extra = rng.integers(0, N, size=3).tolist()
        H2, _ = hull(g, T + extra)
        assert H <= H2


@given(st.lists(st.integers(0, 34), max_size=6), st.lists(st.integers(0, 34), max_size=4))
@settings(max_examples=100, deadline=None)
def test_monotone_hypothesis(T, extra):
    g = build_graph("grassmann", 2, 4, 2)
    A, _ = hull(g, T)
    B, _ = hull(g, T + extra)
    assert A <= B
    assert hull(g, A)[0] == A


def test_vertex_set_basics():
    s = VertexSet(10, [1, 3])
    assert 3 in s and 2 not in s and len(s) == 2
    s.add(2)
    assert list(s) == [1, 2, 3]
    assert VertexSet(10, [1]) <= s and not s <= VertexSet(10, [1])
    assert (VertexSet(10, [1]) | VertexSet(10, [9])) == VertexSet(10, [1, 9])
    with pytest.raises(IdOutOfRange):
        VertexSet(10, [10])


def test_find_pair_construction(graph):
    g = graph("qkneser", 2, 4, 2)
    res = find_hull_pair(g, "paper_construction")
    assert res.pair is not None and not g.is_adjacent(*res.pair)
    J = graph("grassmann", 2, 4, 2)
    res = find_hull_pair(J, "paper")
    assert [J.vertex(v).canonical() for v in res.pair] == ["1 0 0 0;0 1 0 0", "0 0 1 0;0 0 0 1"]


def test_find_pair_full(graph):
    g = graph("qkneser", 2, 4, 2)
    res = find_hull_pair(g, "full", collect_all=True)
    assert res.pairs_checked == 35 * 34 // 2
    by_sweeps = [(a, b) for a in range(35) for b in range(a + 1, 35) if hull_by_sweeps(g, [a, b]).mask.all()]
    assert res.witnesses == by_sweeps
    assert len(by_sweeps) == 595
    assert res.pair == res.witnesses[0]


def test_find_pair_deterministic_across_threads(graph):
    g = graph("qkneser", 2, 4, 2)
    a = find_hull_pair(g, "full", collect_all=True, threads=1)
    b = find_hull_pair(g, "full", collect_all=True, threads=3)
    assert a.witnesses == b.witnesses


def test_find_pair_fix_first(graph):
    g = graph("qkneser", 2, 6, 3)
    res = find_hull_pair(g, "fix-first")
    assert res.pair[0] == 0 and is_hull_set(g, list(res.pair))


def test_find_pair_budget():
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        g = build_graph("qkneser", 2, 3, 2)
    with pytest.raises(LimitExceeded):
        find_hull_pair(g, "full", max_pairs=5)


def test_find_pair_none_when_impossible():
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        # K_2(3,2): two 2-subspaces of F_2^3 always meet, no edges at all
        g = build_graph("qkneser", 2, 3, 2)
    assert g.edge_count == 0
    res = find_hull_pair(g, "full")
    assert res.pair is None and res.pairs_checked == 21


def test_trace_export(graph):
    g = graph("grassmann", 2, 6, 3)
    res = find_hull_pair(g, "paper")
    d = json.loads(trace_to_json(g, res.trace))
    assert set(d) == {"family", "q", "n", "k", "seed", "rounds", "converged_at", "hull_size", "is_hull_set"}
    assert d["family"] == "grassmann" and d["hull_size"] == 1395 and d["is_hull_set"]
    assert d["seed"] == ["1 0 0 0 0 0;0 1 0 0 0 0;0 0 1 0 0 0", "1 0 0 0 0 0;0 0 0 1 0 0;0 0 0 0 1 0"]
    assert d["converged_at"] == len(d["rounds"])
    assert sum(len(r) for r in d["rounds"]) + 2 == 1395
    assert trace_to_dict(g, res.trace) == d
