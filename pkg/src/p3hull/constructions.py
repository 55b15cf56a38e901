"""Explicit hull-set witnesses for K_q(n,k) and J_q(n,k).

Coordinates are 0-based internally; ``e(i)`` in docstrings and reports
means the 1-based unit vector, i.e. internal column ``i - 1``.

* :func:`kneser_case1_pair` -- ``<e1..ek>`` and ``<e2..e_{k+1}>`` for n >= 2k+1.
* :func:`kneser_case2_pair` -- a non-adjacent pair of K_q(2k, k).
* :func:`adapted_bases` / :func:`lemma24_w4` -- a common neighbour of an
  adjacent pair w1, w2 and a third vertex adjacent to neither.
* :func:`grassmann_pair` / :func:`verify_grassmann_chain` -- the witness
  pair of J_q(n,k) and the staged argument that its hull is everything.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import InvalidParams, PreconditionViolated
from .gfq import FieldSpec, make_field
from .graphgen import Family, SubspaceGraph
from .subspace import (
    Subspace,
    coordinate_subspace,
    enumerate_bases,
    intersection,
    intersection_dim,
    rank,
    rref,
    solve_in_span,
)


def _span(n: int, F: FieldSpec, rows) -> Subspace:
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, n)
    return rref(rows, F, n=n)


# -- q-Kneser pairs ------------------------------------------------------------


def kneser_case1_pair(q: int, n: int, k: int) -> tuple[Subspace, Subspace, Subspace]:
    """``w1 = <e1..ek>``, ``w2 = <e2..e_{k+1}>`` and ``u = <e1..e_{k+1}>``."""
    if k < 2 or n <= 2 * k:
        raise InvalidParams(f"case 1 needs k >= 2 and n >= 2k+1, got n={n}, k={k}")
    F = make_field(q)
    w1 = coordinate_subspace(n, range(0, k), F)
    w2 = coordinate_subspace(n, range(1, k + 1), F)
    u = coordinate_subspace(n, range(0, k + 1), F)
    return w1, w2, u


class Selector(str, Enum):
    MIN_INTERSECTION = "min_intersection"
    MAX_INTERSECTION = "max_intersection"
    BY_INDEX = "by_index"


def kneser_case2_pair(q: int, k: int, selector="by_index", index: int = 0) -> tuple[Subspace, Subspace]:
    """A non-adjacent pair of K_q(2k, k), chosen deterministically.

    ``by_index`` returns the ``index``-th non-adjacent pair (u < v) in
    enumeration order; the other selectors return the first pair in that
    order whose intersection has dimension 1 or k - 1 respectively.
    """
    selector = Selector(selector)
    if k < 2:
        raise InvalidParams(f"case 2 needs k >= 2, got k={k}")
    n = 2 * k
    F = make_field(q)
    bases = enumerate_bases(n, k, F)
    from .graphgen import PointIndex

    pts = PointIndex(n, F)
    inc = pts.incidence(bases)
    want = {
        Selector.MIN_INTERSECTION: (q**1 - 1) // (q - 1),
        Selector.MAX_INTERSECTION: (q ** (k - 1) - 1) // (q - 1),
    }
    seen = 0
    for u in range(bases.shape[0]):
        shared = np.rint((inc[u : u + 1] @ inc[u + 1 :].T).toarray()[0]).astype(np.int64)
        if selector is Selector.BY_INDEX:
            hits = np.flatnonzero(shared > 0)
            if seen + hits.size > index:
                v = u + 1 + hits[index - seen]
                break
            seen += hits.size
        else:
            hits = np.flatnonzero(shared == want[selector])
            if hits.size:
                v = u + 1 + hits[0]
                break
    else:
        raise InvalidParams(f"no pair for selector {selector.value} with index {index}")

    def sub(i):
        return Subspace(F, n, tuple(map(tuple, bases[i].tolist())))

    return sub(u), sub(int(v))


# -- adapted bases and the common neighbour w4 -------------------------------


@dataclass(frozen=True, eq=False)
class AdaptedBases:
    """Bases e of w1 and f of w2 with
    ``w3 = <e_1..e_a> + <f_1..f_b> + <e_{a+t} + f_{b+t} : t = 1..g>``."""

    field: FieldSpec
    n: int
    k: int
    e_basis: np.ndarray
    f_basis: np.ndarray
    alpha: int
    beta: int
    gamma: int

    def e(self, i: int) -> np.ndarray:
        return self.e_basis[i - 1]

    def f(self, i: int) -> np.ndarray:
        return self.f_basis[i - 1]

    def plus(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.field.add[x, y].astype(np.int64)

    def reconstruct_w3(self) -> Subspace:
        a, b, g = self.alpha, self.beta, self.gamma
        rows = [self.e(i) for i in range(1, a + 1)]
        rows += [self.f(i) for i in range(1, b + 1)]
        rows += [self.plus(self.e(a + t), self.f(b + t)) for t in range(1, g + 1)]
        return _span(self.n, self.field, rows)


def _extend(current: list[np.ndarray], candidates: np.ndarray, target: int, F: FieldSpec) -> list[np.ndarray]:
    """Greedily append candidate rows that raise the rank, up to ``target``."""
    out = list(current)
    for row in candidates:
        if len(out) == target:
            break
        if rank(np.array(out + [row]), F) == len(out) + 1:
            out.append(np.asarray(row, dtype=np.int64))
    assert len(out) == target
    return out


def adapted_bases(w1: Subspace, w2: Subspace, w3: Subspace) -> AdaptedBases:
    """Change of basis that puts (w1, w2, w3) into the normal form above.

    Needs w1 ∩ w2 = 0 with dim w1 + dim w2 = n, and w3 meeting both w1 and
    w2 nontrivially.  The intersection bases are extended by the RREF rows
    of w1 (resp. w2); the mixed generators of w3 are taken from its RREF
    rows and split along w1 ⊕ w2.
    """
    F, n, k = w1.field, w1.n, w1.dim
    if not (w2.dim == k and w3.dim == k and w2.n == n and w3.n == n and n == 2 * k):
        raise PreconditionViolated("need three k-subspaces of F_q^{2k}")
    if intersection_dim(w1, w2) != 0:
        raise PreconditionViolated("w1 and w2 must be adjacent (trivial intersection)")
    A = intersection(w1, w3)
    B = intersection(w2, w3)
    alpha, beta = A.dim, B.dim
    if alpha == 0 or beta == 0:
        raise PreconditionViolated("w3 must be non-adjacent to both w1 and w2")
    gamma = k - alpha - beta

    core = [r for r in A.basis] + [r for r in B.basis]
    mixed = _extend(core, w3.basis, k, F)[len(core):]
    assert len(mixed) == gamma

    both = np.concatenate([w1.basis, w2.basis])
    e_part, f_part = [], []
    for g in mixed:
        c = solve_in_span(both, g, F)
        assert c is not None
        e_part.append(_combine(c[:k], w1.basis, F))
        f_part.append(_combine(c[k:], w2.basis, F))

    e_rows = _extend(list(A.basis) + e_part, w1.basis, k, F)
    f_rows = _extend(list(B.basis) + f_part, w2.basis, k, F)
    return AdaptedBases(field=F, n=n, k=k, e_basis=np.array(e_rows), f_basis=np.array(f_rows),
                        alpha=alpha, beta=beta, gamma=gamma)


def _combine(coeffs: np.ndarray, rows: np.ndarray, F: FieldSpec) -> np.ndarray:
    out = np.zeros(rows.shape[1], dtype=np.int64)
    for c, row in zip(coeffs, rows):
        out = F.add[out, F.mul[c, row]]
    return out.astype(np.int64)


def lemma24_w4(bases: AdaptedBases) -> Subspace:
    """A k-subspace meeting each of w1, w2, w3 trivially.

    It is spanned by vectors ``e_i + f_{σ(i)}`` for a permutation σ that
    depends on gamma:

    * gamma >= 2: e_{a+t} + f_{b+t+1} (t < gamma), e_{a+gamma+s} + f_{1+s}
      (s = 0..b), e_t + f_{b+gamma+t} (t = 1..a);
    * gamma == 1: the same without the first block;
    * gamma == 0: e_{a+s} + f_s (s = 1..b), e_t + f_{b+t} (t = 1..a).
    """
    a, b, g, k = bases.alpha, bases.beta, bases.gamma, bases.k
    e, f, plus = bases.e, bases.f, bases.plus
    rows = []
    if g >= 1:
        rows += [plus(e(a + t), f(b + t + 1)) for t in range(1, g)]
        rows += [plus(e(a + g + s), f(1 + s)) for s in range(0, k - a - g + 1)]
        rows += [plus(e(t), f(b + g + t)) for t in range(1, a + 1)]
    else:
        rows += [plus(e(a + s), f(s)) for s in range(1, b + 1)]
        rows += [plus(e(t), f(b + t)) for t in range(1, a + 1)]
    assert len(rows) == k
    w4 = _span(bases.n, bases.field, rows)
    assert w4.dim == k
    return w4


def w4_for_triple(w1: Subspace, w2: Subspace, w3: Subspace) -> Subspace:
    return lemma24_w4(adapted_bases(w1, w2, w3))


# -- Grassmann witness -------------------------------------------------------


@dataclass(frozen=True)
class GrassmannPair:
    v1: Subspace
    v2: Subspace
    u: tuple[Subspace, Subspace, Subspace, Subspace]


def grassmann_pair(q: int, n: int, k: int) -> GrassmannPair:
    """v1 = <e1..e_k>, v2 = <e1..e_{k-2}, e_{k+1}, e_{k+2}> and the four
    subspaces u that swap one of e_{k-1}, e_k for one of e_{k+1}, e_{k+2}."""
    if k < 2 or n < 2 * k:
        raise InvalidParams(f"need n >= 2k >= 4, got n={n}, k={k}")
    F = make_field(q)
    base = list(range(k - 2))

    def sp(*extra):
        return coordinate_subspace(n, base + list(extra), F)

    a, b, c, d = k - 2, k - 1, k, k + 1  # e_{k-1}, e_k, e_{k+1}, e_{k+2}
    return GrassmannPair(v1=sp(a, b), v2=sp(c, d), u=(sp(a, c), sp(a, d), sp(b, c), sp(b, d)))


def paper_pair(family, q: int, n: int, k: int) -> tuple[Subspace, Subspace]:
    """The explicit hull-set pair for either family (any two vertices if k = 1)."""
    family = Family.parse(family)
    if k == 1:
        F = make_field(q)
        return coordinate_subspace(n, [0], F), coordinate_subspace(n, [1], F)
    if family is Family.QKNESER:
        if n >= 2 * k + 1:
            w1, w2, _ = kneser_case1_pair(q, n, k)
            return w1, w2
        if n == 2 * k:
            return kneser_case2_pair(q, k, "by_index")
        raise InvalidParams(f"no construction for n < 2k (n={n}, k={k})")
    gp = grassmann_pair(q, n, k)
    return gp.v1, gp.v2


# -- staged verification of the Grassmann argument ---------------------------


@dataclass
class StageResult:
    name: str
    passed: bool
    detail: str = ""
    counterexample: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail,
                "counterexample": self.counterexample}


@dataclass
class ChainReport:
    graph: str
    stages: list[StageResult]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.stages)

    def to_json(self, **kwargs) -> str:
        return json.dumps({"graph": self.graph, "pass": self.passed,
                           "stages": [s.as_dict() for s in self.stages]}, **kwargs)


def _containing(g: SubspaceGraph, sub: Subspace) -> np.ndarray:
    """Mask of vertices that contain ``sub``."""
    return g.intersection_dims(sub) == sub.dim


def _stage(g, name, bad_mask, detail="") -> StageResult:
    bad = np.flatnonzero(bad_mask)
    return StageResult(name, bad.size == 0, detail,
                       [g.vertex(int(v)).canonical() for v in bad[:5]])


def verify_grassmann_chain(g: SubspaceGraph) -> ChainReport:
    """Check each step of the argument that {v1, v2} is a hull set of J_q(n,k).

    Stages: (a) the u_i lie in I[{v1, v2}]; (b) C1 and C2 lie in the hull,
    each member outside {u1, u2} (resp. {u3, u4}) seeing both of them;
    (c) D_0 lies in the hull, each member outside C1 ∪ C2 having two
    neighbours in C1 ∪ C2; (d) every member of D_i has two neighbours in
    D_{i-1}; (e) D_{k-2} is the whole vertex set.  Where the original
    argument names K_q(2k, k) at this point, the Grassmann graph is meant.
    """
    from .hull import _neighbor_counts, hull, interval

    if g.family is not Family.GRASSMANN:
        raise InvalidParams("verify_grassmann_chain needs a Grassmann graph")
    q, n, k = g.q, g.n, g.k
    gp = grassmann_pair(q, n, k)
    F = g.field
    ids = [g.id_of(s) for s in (gp.v1, gp.v2, *gp.u)]
    v1, v2, u1, u2, u3, u4 = ids
    N = g.num_vertices
    stages = []

    I1 = interval(g, [v1, v2])
    u_mask = np.zeros(N, dtype=bool)
    u_mask[[u1, u2, u3, u4]] = True
    stages.append(_stage(g, "a: u1..u4 in I[T]", u_mask & ~I1.mask))

    H, _ = hull(g, [v1, v2])
    base = list(range(k - 2))
    C1 = _containing(g, coordinate_subspace(n, base + [k - 2], F))
    C2 = _containing(g, coordinate_subspace(n, base + [k - 1], F))
    adj = g.adjacency_matrix()

    def sees_both(mask, x, y):
        need = mask.copy()
        need[[x, y]] = False
        col = adj[:, [x, y]].toarray()
        return need & ~((col[:, 0] > 0) & (col[:, 1] > 0))

    bad_b = (C1 & ~H.mask) | (C2 & ~H.mask) | sees_both(C1, u1, u2) | sees_both(C2, u3, u4)
    stages.append(_stage(g, "b: C1, C2 in H(T)", bad_b,
                         f"|C1|={int(C1.sum())}, |C2|={int(C2.sum())}"))

    def D(i):
        return _containing(g, coordinate_subspace(n, range(k - 2 - i), F))

    D0 = D(0)
    C12 = C1 | C2
    to_C = _neighbor_counts(g, C12)
    bad_c = (D0 & ~H.mask) | (D0 & ~C12 & (to_C < 2))
    stages.append(_stage(g, "c: D0 in H(T)", bad_c, f"|D0|={int(D0.sum())}"))

    if k == 2:
        stages.append(StageResult("d: D_i in I[D_{i-1}]", True, "vacuous for k = 2 (D0 = V)"))
    else:
        bad_d = np.zeros(N, dtype=bool)
        sizes = []
        prev = D0
        for i in range(1, k - 1):
            cur = D(i)
            bad_d |= cur & (_neighbor_counts(g, prev) < 2) & ~prev
            bad_d |= prev & ~cur
            sizes.append(int(cur.sum()))
            prev = cur
        stages.append(_stage(g, "d: D_i in I[D_{i-1}]", bad_d, f"|D_i| = {sizes}"))

    stages.append(_stage(g, "e: D_{k-2} = V", ~D(k - 2)))
    return ChainReport(graph=g.name, stages=stages)
