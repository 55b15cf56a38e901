"""Closed form versus brute force, one check per counting statement.

Every function returns a :class:`VerifyReport`; none of them raises on a
mismatch.  Brute-force sides use only the explicit graph or explicit
subspace enumeration, never the formula being tested.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .constructions import (
    adapted_bases,
    grassmann_pair,
    kneser_case1_pair,
    lemma24_w4,
    verify_grassmann_chain,
)
from .errors import InvalidParams
from .gfq import make_field
from .graphgen import Caps, Family, PointIndex, SubspaceGraph, build_graph, dims_against, point_count
from .hull import hull, verify_no_singleton_hull
from .qcomb import (
    CountParams,
    check_d_i0_bound,
    count_a,
    count_case2_common,
    count_dij,
    gaussian_binomial,
    kneser_degree,
    kneser_edge_count,
)
from .subspace import (
    Subspace,
    coordinate_subspace,
    enumerate_bases,
    fq_matmul,
    intersection_dim,
    rank,
    rref,
)

MAX_COUNTEREXAMPLES = 10
INCIDENCE_CROSSCHECK = 20_000_000


@dataclass
class VerifyReport:
    target: str
    params: dict
    passed: bool = True
    checked: int = 0
    details: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)

    def fail(self, example) -> None:
        self.passed = False
        if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
            self.counterexamples.append(example)

    def as_dict(self) -> dict:
        return {"target": self.target, "params": self.params, "pass": self.passed,
                "checked": self.checked, "details": self.details,
                "counterexamples": self.counterexamples}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.as_dict(), default=str, **kwargs)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        ps = " ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{status} {self.target} [{ps}] checked={self.checked}"


def _require_graph(g, family, q, n, k, caps):
    if g is not None:
        return g
    return build_graph(family, q, n, k, caps=caps)


# -- counting ------------------------------------------------------------------


def verify_counts(q: int, n: int, k: int, m_values=None) -> VerifyReport:
    """Enumeration size against [n,k]_q, and class sizes against count_a
    for every m (default 0..n).

    The classes are taken against u = <e_{n-m+1}, ..., e_n>: for an RREF
    basis the rank of its first n-m columns is the number of pivots there,
    so dim(W ∩ u) = k - #{pivots < n-m}.  Small cases also cross-check
    against u = <e_1, ..., e_m> through point incidence.
    """
    rep = VerifyReport("lemma21", {"q": q, "n": n, "k": k})
    F = make_field(q)
    bases = enumerate_bases(n, k, F)
    total = gaussian_binomial(n, k, q)
    rep.checked += 1
    rep.details["subspaces"] = int(bases.shape[0])
    if bases.shape[0] != total:
        rep.fail({"enumerated": int(bases.shape[0]), "gaussian_binomial": total})
    pivots = (bases != 0).argmax(axis=2)
    small = bases.shape[0] * point_count(n, q) <= INCIDENCE_CROSSCHECK
    if small:
        points = PointIndex(n, F)
        inc = points.incidence(bases)
    for m in (range(n + 1) if m_values is None else m_values):
        formula = [count_a(CountParams(n=n, m=m, k=k, i=i, q=q)) for i in range(k + 1)]
        rep.checked += 1
        if sum(formula) != total:
            rep.fail({"m": m, "partition_sum": sum(formula), "expected": total})
        class_dims = [k - (pivots < n - m).sum(axis=1)]
        if small:
            class_dims.append(dims_against(inc, points, k, coordinate_subspace(n, range(m), F)))
        for dims in class_dims:
            sizes = np.bincount(dims, minlength=k + 1)
            rep.checked += k + 1
            for i in range(k + 1):
                if int(sizes[i]) != formula[i]:
                    rep.fail({"m": m, "i": i, "brute": int(sizes[i]), "formula": formula[i]})
    return rep


def verify_regularity(q: int, n: int, k: int, g: SubspaceGraph | None = None, caps: Caps | None = None) -> VerifyReport:
    rep = VerifyReport("regularity", {"q": q, "n": n, "k": k})
    g = _require_graph(g, Family.QKNESER, q, n, k, caps)
    deg = g.degrees()
    want = kneser_degree(n, k, q)
    rep.checked = g.num_vertices + 1
    bad = np.flatnonzero(deg != want)
    for v in bad[:MAX_COUNTEREXAMPLES]:
        rep.fail({"vertex": g.vertex(int(v)).canonical(), "degree": int(deg[v]), "formula": want})
    if g.edge_count != kneser_edge_count(n, k, q):
        rep.fail({"edges": g.edge_count, "formula": kneser_edge_count(n, k, q)})
    rep.details.update(degree=want, edges=g.edge_count, vertices=g.num_vertices)
    return rep


def verify_lemma22(q: int, k: int, n_values) -> VerifyReport:
    rep = VerifyReport("lemma22", {"q": q, "k": k, "n": list(n_values)})
    for n in n_values:
        r = check_d_i0_bound(n, k, q)
        rep.details[f"n={n}"] = {f"d_{i}0": v for i, v in r.values.items()}
        rep.checked += len(r.values)
        for i, v in r.values.items():
            if v < 2:
                rep.fail({"n": n, "i": i, "d_i0": v})
    return rep


def verify_lemma23(q: int, n: int, k: int, m_values=None, g: SubspaceGraph | None = None,
                   caps: Caps | None = None) -> VerifyReport:
    """For every x and every j != class(x): |N(x) ∩ class j| == d_ij."""
    rep = VerifyReport("lemma23", {"q": q, "n": n, "k": k})
    g = _require_graph(g, Family.QKNESER, q, n, k, caps)
    adj = g.adjacency_matrix(dtype=np.int64)
    ms = range(n - k + 1) if m_values is None else m_values
    rep.params["m"] = list(ms)
    for m in ms:
        u = coordinate_subspace(n, range(m), g.field)
        dims = g.intersection_dims(u)
        onehot = np.zeros((g.num_vertices, k + 1), dtype=np.int64)
        onehot[np.arange(g.num_vertices), dims] = 1
        counts = np.asarray(adj @ onehot)
        table = np.full((k + 1, k + 1), -1, dtype=object)
        for i in range(k + 1):
            for j in range(k + 1):
                if i != j:
                    table[i, j] = count_dij(CountParams(n=n, m=m, k=k, i=i, j=j, q=q))
        for i in range(k + 1):
            xs = np.flatnonzero(dims == i)
            for j in range(k + 1):
                if i == j or not xs.size:
                    continue
                rep.checked += xs.size
                bad = xs[counts[xs, j] != table[i, j]]
                for x in bad[:3]:
                    rep.fail({"m": m, "i": i, "j": j, "x": g.vertex(int(x)).canonical(),
                              "brute": int(counts[x, j]), "formula": int(table[i, j])})
    return rep


def _nonadjacent_pairs(g: SubspaceGraph, samples: int | None, seed: int):
    """All non-adjacent distinct pairs (u < v), or ``samples`` random ones."""
    N = g.num_vertices
    if samples is None:
        for u in range(N):
            nb = g.neighbors(u)
            mask = np.ones(N, dtype=bool)
            mask[nb] = False
            mask[: u + 1] = False
            for v in np.flatnonzero(mask):
                yield u, int(v)
        return
    rng = np.random.default_rng(seed)
    got = 0
    while got < samples:
        u, v = (int(x) for x in rng.integers(0, N, size=2))
        if u == v or g.is_adjacent(u, v):
            continue
        got += 1
        yield u, v


def verify_case2count(q: int, k: int, samples: int | None = None, seed: int = 0,
                      g: SubspaceGraph | None = None, caps: Caps | None = None) -> VerifyReport:
    """Common neighbours of non-adjacent pairs of K_q(2k,k) versus the formula."""
    rep = VerifyReport("case2count", {"q": q, "k": k, "samples": samples or "all", "seed": seed})
    g = _require_graph(g, Family.QKNESER, q, 2 * k, k, caps)
    by_a: dict[int, int] = {}
    for u, v in _nonadjacent_pairs(g, samples, seed):
        a = k - intersection_dim(g.vertex(u), g.vertex(v))
        common = np.intersect1d(g.neighbors(u), g.neighbors(v), assume_unique=True).size
        want = count_case2_common(k, a, q)
        rep.checked += 1
        by_a[a] = by_a.get(a, 0) + 1
        if common != want:
            rep.fail({"w1": g.vertex(u).canonical(), "w3": g.vertex(v).canonical(), "a": a,
                      "brute": int(common), "formula": want})
    rep.details["pairs_by_a"] = by_a
    rep.details["formula_by_a"] = {a: count_case2_common(k, a, q) for a in range(1, k)}
    return rep


# -- common neighbour of a triple ----------------------------------------------


def _check_w4(rep: VerifyReport, w1: Subspace, w2: Subspace, w3: Subspace) -> dict | None:
    ab = adapted_bases(w1, w2, w3)
    rep.checked += 1
    problem = {}
    if ab.reconstruct_w3() != w3:
        problem["reconstruction"] = False
    if not (1 <= ab.alpha <= ab.k - 1 and 1 <= ab.beta <= ab.k - 1 and ab.alpha + ab.beta <= ab.k):
        problem["alpha_beta"] = (ab.alpha, ab.beta)
    if rref(ab.e_basis, ab.field).dim != ab.k or rref(ab.f_basis, ab.field).dim != ab.k:
        problem["bases"] = "not full rank"
    w4 = lemma24_w4(ab)
    dims = [intersection_dim(w4, w) for w in (w1, w2, w3)]
    if w4.dim != ab.k or any(dims):
        problem["w4_dims"] = dims
    if problem:
        problem.update(w1=w1.canonical(), w2=w2.canonical(), w3=w3.canonical(), w4=w4.canonical())
        rep.fail(problem)
        return None
    return {"gamma": ab.gamma}


def verify_lemma24(q: int, k: int, samples: int | None = None, seed: int = 0,
                   g: SubspaceGraph | None = None, caps: Caps | None = None) -> VerifyReport:
    """w4 is adjacent to w1, w2, w3 for every (or ``samples`` random)
    triple with w1 ~ w2 and w3 adjacent to neither."""
    rep = VerifyReport("lemma24", {"q": q, "k": k, "samples": samples or "all", "seed": seed})
    g = _require_graph(g, Family.QKNESER, q, 2 * k, k, caps)
    N = g.num_vertices
    gammas: dict[int, int] = {}

    def record(info):
        if info is not None:
            gammas[info["gamma"]] = gammas.get(info["gamma"], 0) + 1

    if samples is None:
        for a in range(N):
            for b in g.neighbors(a):
                free = np.ones(N, dtype=bool)
                free[g.neighbors(a)] = False
                free[g.neighbors(int(b))] = False
                for c in np.flatnonzero(free):
                    record(_check_w4(rep, g.vertex(a), g.vertex(int(b)), g.vertex(int(c))))
    else:
        rng = np.random.default_rng(seed)
        done = 0
        while done < samples:
            a = int(rng.integers(N))
            nb = g.neighbors(a)
            b = int(nb[rng.integers(nb.size)])
            free = np.ones(N, dtype=bool)
            free[nb] = False
            free[g.neighbors(b)] = False
            cand = np.flatnonzero(free)
            if not cand.size:
                continue
            c = int(cand[rng.integers(cand.size)])
            record(_check_w4(rep, g.vertex(a), g.vertex(b), g.vertex(c)))
            done += 1
    rep.details["triples_by_gamma"] = gammas
    return rep


def _random_invertible(size: int, F, rng) -> np.ndarray:
    while True:
        M = rng.integers(0, F.q, size=(size, size))
        if rank(M, F) == size:
            return M


def verify_lemma24_construction(q: int, k: int, alpha: int, beta: int, samples: int = 20,
                                seed: int = 0) -> VerifyReport:
    """Graph-free check in F_q^{2k}: random triples with prescribed
    (alpha, beta), obtained by pushing the normal form through a random
    invertible change of coordinates."""
    gamma = k - alpha - beta
    rep = VerifyReport("lemma24_construction",
                       {"q": q, "k": k, "alpha": alpha, "beta": beta, "gamma": gamma, "seed": seed})
    if not (1 <= alpha and 1 <= beta and gamma >= 0):
        raise InvalidParams("need alpha, beta >= 1 and alpha + beta <= k")
    F = make_field(q)
    n = 2 * k
    rng = np.random.default_rng(seed)
    I = np.eye(n, dtype=np.int64)
    e = I[:k]
    f = I[k:]
    w3_rows = [e[t] for t in range(alpha)] + [f[t] for t in range(beta)]
    w3_rows += [F.add[e[alpha + t], f[beta + t]] for t in range(gamma)]
    w3_rows = np.array(w3_rows, dtype=np.int64)
    seen_gamma = set()
    for _ in range(samples):
        M = _random_invertible(n, F, rng)
        w1 = rref(fq_matmul(e, M, F), F)
        w2 = rref(fq_matmul(f, M, F), F)
        w3 = rref(fq_matmul(w3_rows, M, F), F)
        info = _check_w4(rep, w1, w2, w3)
        if info is not None:
            seen_gamma.add(info["gamma"])
    rep.details["gamma_seen"] = sorted(seen_gamma)
    if seen_gamma and seen_gamma != {gamma}:
        rep.fail({"expected_gamma": gamma, "seen": sorted(seen_gamma)})
    return rep


# -- hull statements -----------------------------------------------------------


def verify_lemma25(q: int, k: int, samples: int | None = None, seed: int = 0,
                   g: SubspaceGraph | None = None, caps: Caps | None = None) -> VerifyReport:
    """For non-adjacent w1, w2 in K_q(2k,k): N(w1) ∪ N(w2) ⊆ H({w1, w2}),
    and every x in N(w1) \\ N(w2) has a neighbour in N(w1) ∩ N(w2)."""
    rep = VerifyReport("lemma25", {"q": q, "k": k, "samples": samples or "all", "seed": seed})
    g = _require_graph(g, Family.QKNESER, q, 2 * k, k, caps)
    N = g.num_vertices
    for u, v in _nonadjacent_pairs(g, samples, seed):
        H, _ = hull(g, [u, v])
        nu, nv = g.neighbors(u), g.neighbors(v)
        union = np.union1d(nu, nv)
        rep.checked += 1
        missing = union[~H.mask[union]]
        common = np.zeros(N, dtype=bool)
        common[np.intersect1d(nu, nv, assume_unique=True)] = True
        lonely = [int(x) for x in np.concatenate([np.setdiff1d(nu, nv), np.setdiff1d(nv, nu)])
                  if not common[g.neighbors(int(x))].any()]
        if missing.size or lonely:
            rep.fail({"w1": g.vertex(u).canonical(), "w2": g.vertex(v).canonical(),
                      "not_in_hull": missing[:5].tolist(), "no_common_neighbour": lonely[:5]})
    return rep


def verify_thm11(q: int, n: int, k: int, samples: int | None = None, seed: int = 0,
                 g: SubspaceGraph | None = None, caps: Caps | None = None) -> VerifyReport:
    """h(K_q(n,k)) = 2: the witness pair(s) span everything, singletons do not."""
    rep = VerifyReport("thm11", {"q": q, "n": n, "k": k})
    g = _require_graph(g, Family.QKNESER, q, n, k, caps)
    rep.checked += 1
    if not verify_no_singleton_hull(g):
        rep.fail({"singleton_hull": "some singleton is not convex"})
    if n >= 2 * k + 1:
        w1, w2, _ = kneser_case1_pair(q, n, k)
        pairs = [(g.id_of(w1), g.id_of(w2))]
        rep.details["case"] = 1
    elif n == 2 * k:
        pairs = _nonadjacent_pairs(g, samples, seed)
        rep.details["case"] = 2
    else:
        raise InvalidParams(f"need n >= 2k, got n={n}, k={k}")
    rounds = []
    for u, v in pairs:
        H, tr = hull(g, [u, v])
        rep.checked += 1
        rounds.append(tr.converged_at)
        if not H.mask.all():
            rep.fail({"w1": g.vertex(u).canonical(), "w2": g.vertex(v).canonical(),
                      "hull_size": len(H), "vertices": g.num_vertices})
    rep.details.update(vertices=g.num_vertices, pairs=len(rounds),
                       max_rounds=max(rounds) if rounds else 0, hull_number=2 if rep.passed else None)
    return rep


def verify_thm12(q: int, n: int, k: int, g: SubspaceGraph | None = None, caps: Caps | None = None) -> VerifyReport:
    rep = VerifyReport("thm12", {"q": q, "n": n, "k": k})
    g = _require_graph(g, Family.GRASSMANN, q, n, k, caps)
    gp = grassmann_pair(q, n, k)
    a, b = g.id_of(gp.v1), g.id_of(gp.v2)
    rep.checked += 2
    if g.is_adjacent(a, b):
        rep.fail({"v1v2": "adjacent"})
    H, tr = hull(g, [a, b])
    if not H.mask.all():
        rep.fail({"hull_size": len(H), "vertices": g.num_vertices})
    if not verify_no_singleton_hull(g):
        rep.fail({"singleton_hull": "some singleton is not convex"})
    rep.details.update(v1=gp.v1.pretty(), v2=gp.v2.pretty(), rounds=tr.converged_at,
                       vertices=g.num_vertices, hull_number=2 if rep.passed else None)
    return rep


def verify_chain(q: int, n: int, k: int, g: SubspaceGraph | None = None, caps: Caps | None = None) -> VerifyReport:
    rep = VerifyReport("chain", {"q": q, "n": n, "k": k})
    g = _require_graph(g, Family.GRASSMANN, q, n, k, caps)
    chain = verify_grassmann_chain(g)
    rep.checked = len(chain.stages)
    rep.details["stages"] = [s.as_dict() for s in chain.stages]
    for s in chain.stages:
        if not s.passed:
            rep.fail({"stage": s.name, "counterexample": s.counterexample})
    return rep


def small_suite(seed: int = 0):
    """Desk-scale preset: one report per target on small instances."""
    yield verify_counts(2, 4, 2)
    yield verify_counts(3, 4, 2)
    yield verify_regularity(2, 5, 2)
    yield verify_lemma22(2, 3, range(7, 12))
    yield verify_lemma23(2, 5, 2)
    yield verify_case2count(2, 2)
    yield verify_lemma24(2, 2)
    yield verify_lemma24_construction(2, 4, 1, 1, samples=10, seed=seed)
    yield verify_lemma25(2, 2)
    yield verify_thm11(2, 5, 2)
    yield verify_thm11(2, 4, 2)
    yield verify_thm12(2, 4, 2)
    yield verify_chain(2, 6, 3)
