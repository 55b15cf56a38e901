import json

import numpy as np
import pytest

from p3hull import (
    InvalidParams,
    PreconditionViolated,
    Subspace,
    adapted_bases,
    coordinate_subspace,
    grassmann_pair,
    intersection_dim,
    kneser_case1_pair,
    kneser_case2_pair,
    lemma24_w4,
    make_field,
    rref,
    verify_grassmann_chain,
)
from p3hull.constructions import paper_pair

F2 = make_field(2)


def span(F, *rows):
    return rref(np.array(rows), F)


def e(n, *one_based, F=F2):
    return coordinate_subspace(n, [i - 1 for i in one_based], F)


def test_case1_examples():
    w1, w2, u = kneser_case1_pair(2, 5, 2)
    assert (w1, w2, u) == (e(5, 1, 2), e(5, 2, 3), e(5, 1, 2, 3))
    F3 = make_field(3)
    w1, w2, u = kneser_case1_pair(3, 7, 3)
    assert (w1, w2, u) == (e(7, 1, 2, 3, F=F3), e(7, 2, 3, 4, F=F3), e(7, 1, 2, 3, 4, F=F3))
    assert intersection_dim(w1, w2) == 2
    with pytest.raises(InvalidParams):
        kneser_case1_pair(2, 4, 2)


def test_case2_selectors():
    w1, w2 = kneser_case2_pair(2, 2, "by_index")
    assert (w1.canonical(), w2.canonical()) == ("1 0 0 0;0 1 0 0", "1 0 0 0;0 1 0 1")
    w1, w2 = kneser_case2_pair(2, 2, "max_intersection")
    assert intersection_dim(w1, w2) == 1
    for k, q in [(2, 3), (3, 2)]:
        for sel in ("by_index", "min_intersection", "max_intersection"):
            w1, w2 = kneser_case2_pair(q, k, sel)
            assert w1 != w2 and intersection_dim(w1, w2) >= 1
    w1, w2 = kneser_case2_pair(2, 3, "min_intersection")
    assert intersection_dim(w1, w2) == 1
    w1, w2 = kneser_case2_pair(2, 3, "max_intersection")
    assert intersection_dim(w1, w2) == 2
    a = kneser_case2_pair(2, 2, "by_index", index=5)
    assert intersection_dim(*a) >= 1


def test_adapted_bases_gamma0():
    ab = adapted_bases(e(4, 1, 2), e(4, 3, 4), e(4, 1, 3))
    assert (ab.alpha, ab.beta, ab.gamma) == (1, 1, 0)
    assert ab.reconstruct_w3() == e(4, 1, 3)


def test_adapted_bases_gamma1():
    w1, w2 = e(6, 1, 2, 3), e(6, 4, 5, 6)
    w3 = span(F2, [1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 1, 0, 0, 1, 0])
    ab = adapted_bases(w1, w2, w3)
    assert (ab.alpha, ab.beta, ab.gamma) == (1, 1, 1)
    assert ab.reconstruct_w3() == w3
    assert rref(ab.e_basis, F2) == w1 and rref(ab.f_basis, F2) == w2
    w4 = lemma24_w4(ab)
    assert [intersection_dim(w4, w) for w in (w1, w2, w3)] == [0, 0, 0]


def test_w4_gamma0_example():
    ab = adapted_bases(e(4, 1, 2), e(4, 3, 4), e(4, 1, 3))
    w4 = lemma24_w4(ab)
    assert w4 == span(F2, [0, 1, 1, 0], [1, 0, 0, 1])
    for w in (e(4, 1, 2), e(4, 3, 4), e(4, 1, 3)):
        assert intersection_dim(w4, w) == 0


def test_w4_gamma2_without_graph():
    # F_2^8, k = 4, alpha = beta = 1, gamma = 2: mixed generators e2+f2, e3+f3
    n = 8
    w1, w2 = e(n, 1, 2, 3, 4), e(n, 5, 6, 7, 8)
    I = np.eye(n, dtype=int)
    w3 = span(F2, I[0], I[4], I[1] + I[5], I[2] + I[6])
    ab = adapted_bases(w1, w2, w3)
    assert (ab.alpha, ab.beta, ab.gamma) == (1, 1, 2)
    assert ab.reconstruct_w3() == w3
    w4 = lemma24_w4(ab)
    assert w4.dim == 4
    assert [intersection_dim(w4, w) for w in (w1, w2, w3)] == [0, 0, 0]


def test_adapted_bases_preconditions():
    with pytest.raises(PreconditionViolated):
        adapted_bases(e(4, 1, 2), e(4, 2, 3), e(4, 1, 3))  # w1, w2 not adjacent
    with pytest.raises(PreconditionViolated):
        adapted_bases(e(4, 1, 2), e(4, 3, 4), span(F2, [1, 0, 1, 0], [0, 1, 0, 1]))  # w3 ~ w1


def test_lemma24_exhaustive_k242(graph):
    g = graph("qkneser", 2, 4, 2)
    V = g.vertices
    count = 0
    for a in range(35):
        for b in g.neighbors(a):
            for c in range(35):
                if g.is_adjacent(a, c) or g.is_adjacent(int(b), c):
                    continue
                ab = adapted_bases(V[a], V[int(b)], V[c])
                assert ab.reconstruct_w3() == V[c]
                w4 = g.id_of(lemma24_w4(ab))
                assert g.is_adjacent(w4, a) and g.is_adjacent(w4, int(b)) and g.is_adjacent(w4, c)
                count += 1
    assert count == 5040


def test_grassmann_pair_examples():
    gp = grassmann_pair(2, 4, 2)
    assert (gp.v1, gp.v2) == (e(4, 1, 2), e(4, 3, 4))
    assert gp.u == (e(4, 1, 3), e(4, 1, 4), e(4, 2, 3), e(4, 2, 4))
    gp = grassmann_pair(2, 6, 3)
    assert (gp.v1, gp.v2) == (e(6, 1, 2, 3), e(6, 1, 4, 5))
    F3 = make_field(3)
    gp = grassmann_pair(3, 4, 2)
    assert (gp.v1, gp.v2) == (e(4, 1, 2, F=F3), e(4, 3, 4, F=F3))
    for bad in [(2, 5, 3), (2, 4, 1)]:
        with pytest.raises(InvalidParams):
            grassmann_pair(*bad)


@pytest.mark.parametrize("q,n,k", [(2, 4, 2), (2, 6, 3), (3, 4, 2), (2, 9, 4), (3, 8, 3)])
def test_grassmann_pair_dims(q, n, k):
    gp = grassmann_pair(q, n, k)
    assert intersection_dim(gp.v1, gp.v2) == k - 2
    for u in gp.u:
        assert intersection_dim(u, gp.v1) == k - 1 == intersection_dim(u, gp.v2)


@pytest.mark.parametrize("spec", [(2, 4, 2), (2, 6, 3), (3, 4, 2), (2, 5, 2)])
def test_chain(graph, spec):
    rep = verify_grassmann_chain(graph("grassmann", *spec))
    assert rep.passed, rep.to_json()
    assert [s.name[0] for s in rep.stages] == list("abcde")
    if spec[2] == 2:
        assert "vacuous" in rep.stages[3].detail
    d = json.loads(rep.to_json())
    assert d["pass"] and all({"name", "pass", "counterexample"} <= set(s) for s in d["stages"])


def test_chain_wrong_family(graph):
    with pytest.raises(InvalidParams):
        verify_grassmann_chain(graph("qkneser", 2, 4, 2))


def test_paper_pair_k1():
    a, b = paper_pair("qkneser", 2, 3, 1)
    assert a != b and a.dim == b.dim == 1
