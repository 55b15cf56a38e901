"""Explicit q-Kneser and Grassmann graphs with CSR adjacency.

Vertices are the k-subspaces of F_q^n in enumeration order.  Adjacency is
found through point incidence: a subspace of dimension d contains exactly
``(q^d - 1) / (q - 1)`` projective points, so the number of points two
vertices share determines ``dim(U ∩ W)``.  One blocked matrix product of the
(vertices x points) incidence matrix therefore yields every pairwise
intersection dimension at once.
"""

from __future__ import annotations

import json
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .errors import AmbientMismatch, IdOutOfRange, InvalidParams, LimitExceeded
from .gfq import FieldSpec, make_field
from .qcomb import gaussian_binomial
from .subspace import Subspace, enumerate_bases

DEFAULT_MAX_VERTICES = 2_000_000
DEFAULT_MAX_EDGE_CHECKS = 500_000_000
_BLOCK_ROWS = 1024


class Family(str, Enum):
    QKNESER = "qkneser"
    GRASSMANN = "grassmann"

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, Family):
            return value
        key = str(value).lower().replace("-", "").replace("_", "")
        aliases = {"qkneser": cls.QKNESER, "kneser": cls.QKNESER, "k": cls.QKNESER,
                   "grassmann": cls.GRASSMANN, "j": cls.GRASSMANN}
        if key not in aliases:
            raise InvalidParams(f"unknown graph family {value!r}")
        return aliases[key]

    @property
    def symbol(self) -> str:
        return "K" if self is Family.QKNESER else "J"


@dataclass(frozen=True)
class Caps:
    max_vertices: int = DEFAULT_MAX_VERTICES
    max_edge_checks: int = DEFAULT_MAX_EDGE_CHECKS


# -- projective point machinery ----------------------------------------------


def normalized_vectors(k: int, F: FieldSpec) -> np.ndarray:
    """One representative per 1-dim subspace of F_q^k: first nonzero entry 1."""
    q = F.q
    out = []
    for lead in range(k):
        tail = k - lead - 1
        codes = np.arange(q**tail, dtype=np.int64)
        block = np.zeros((q**tail, k), dtype=np.int64)
        block[:, lead] = 1
        for t in range(k - 1, lead, -1):
            block[:, t] = codes % q
            codes //= q
        out.append(block)
    if not out:
        return np.zeros((0, k), dtype=np.int64)
    return np.concatenate(out)


def point_count(d: int, q: int) -> int:
    return (q**d - 1) // (q - 1)


class PointIndex:
    """Maps vectors of F_q^n to ids of their projective points."""

    def __init__(self, n: int, F: FieldSpec):
        self.n = n
        self.field = F
        self.weights = F.q ** np.arange(n - 1, -1, -1, dtype=np.int64)
        reps = normalized_vectors(n, F)
        self.size = reps.shape[0]
        self.lookup = np.full(F.q**n, -1, dtype=np.int64)
        self.lookup[reps @ self.weights] = np.arange(self.size)

    def point_ids(self, bases: np.ndarray) -> np.ndarray:
        """For bases (N, d, n) in RREF, the (N, [d,1]_q) array of point ids.

        Combinations with a normalized coefficient vector are already
        normalized because each RREF row has a leading 1 in a pivot column
        where all other rows vanish.
        """
        bases = np.asarray(bases, dtype=np.int64)
        d = bases.shape[1]
        coeffs = normalized_vectors(d, self.field)
        F = self.field
        vecs = np.zeros((bases.shape[0], coeffs.shape[0], self.n), dtype=np.int64)
        for t in range(d):
            vecs = F.add[vecs, F.mul[coeffs[None, :, t, None], bases[:, None, t, :]]]
        ids = self.lookup[vecs @ self.weights]
        assert (ids >= 0).all()
        return ids

    def incidence(self, bases: np.ndarray) -> sp.csr_array:
        ids = self.point_ids(bases)
        N, per = ids.shape
        indptr = np.arange(0, N * per + 1, per, dtype=np.int64)
        return sp.csr_array((np.ones(N * per, dtype=np.float32), ids.ravel(), indptr), shape=(N, self.size))


# -- graph -------------------------------------------------------------------


@dataclass(eq=False)
class SubspaceGraph:
    family: Family
    q: int
    n: int
    k: int
    field: FieldSpec
    bases: np.ndarray = field(repr=False)
    indptr: np.ndarray = field(repr=False)
    indices: np.ndarray = field(repr=False)
    incidence: sp.csr_array = field(repr=False)
    points: PointIndex = field(repr=False)
    outside_regime: bool = False
    _vertices: list[Subspace] | None = field(default=None, repr=False)
    _lookup: dict[str, int] | None = field(default=None, repr=False)

    @property
    def num_vertices(self) -> int:
        return self.bases.shape[0]

    def __len__(self) -> int:
        return self.num_vertices

    @property
    def name(self) -> str:
        return f"{self.family.symbol}_{self.q}({self.n},{self.k})"

    @property
    def vertices(self) -> list[Subspace]:
        if self._vertices is None:
            F, n = self.field, self.n
            self._vertices = [Subspace(F, n, tuple(map(tuple, b))) for b in self.bases.tolist()]
        return self._vertices

    @property
    def id_lookup(self) -> dict[str, int]:
        if self._lookup is None:
            self._lookup = {v.canonical(): i for i, v in enumerate(self.vertices)}
        return self._lookup

    def vertex(self, v: int) -> Subspace:
        self._check_id(v)
        return self.vertices[v]

    def id_of(self, sub: Subspace) -> int | None:
        if sub.n != self.n or sub.field != self.field:
            raise AmbientMismatch(f"{sub!r} does not live in F_{self.q}^{self.n}")
        return self.id_lookup.get(sub.canonical())

    def _check_id(self, v: int) -> None:
        if not 0 <= int(v) < self.num_vertices:
            raise IdOutOfRange(f"vertex id {v} not in [0, {self.num_vertices})")

    def neighbors(self, v: int) -> np.ndarray:
        self._check_id(v)
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def edge_count(self) -> int:
        return int(self.indices.size // 2)

    def adjacency_matrix(self, dtype=np.int32) -> sp.csr_array:
        N = self.num_vertices
        data = np.ones(self.indices.size, dtype=dtype)
        return sp.csr_array((data, self.indices, self.indptr), shape=(N, N))

    def is_adjacent(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        pos = np.searchsorted(nb, v)
        return bool(pos < nb.size and nb[pos] == v)

    def intersection_dims(self, u: Subspace) -> np.ndarray:
        """dim(w ∩ u) for every vertex w, via shared projective points."""
        if u.n != self.n or u.field != self.field:
            raise AmbientMismatch(f"{u!r} does not live in F_{self.q}^{self.n}")
        return dims_against(self.incidence, self.points, self.k, u)


def dims_against(incidence: sp.csr_array, points: PointIndex, k: int, u: Subspace) -> np.ndarray:
    """dim(w ∩ u) for every row w of a (subspaces x points) incidence matrix
    whose subspaces all have dimension k."""
    mask = np.zeros(points.size, dtype=np.float32)
    if u.dim:
        mask[points.point_ids(u.basis[None])[0]] = 1
    shared = np.rint(incidence @ mask).astype(np.int64)
    return _dims_from_counts(shared, points.field.q, max(k, u.dim))


def _dims_from_counts(counts: np.ndarray, q: int, max_dim: int) -> np.ndarray:
    table = np.full(point_count(max_dim, q) + 1, -1, dtype=np.int64)
    for d in range(max_dim + 1):
        table[point_count(d, q)] = d
    dims = table[counts]
    assert (dims >= 0).all()
    return dims


def _adjacency_block(inc: sp.csr_array, dense_t: np.ndarray, lo: int, hi: int, target: int):
    shared = (inc[lo:hi] @ dense_t).astype(np.int64)
    rows, cols = np.nonzero(shared == target)
    rows = rows + lo
    keep = rows != cols
    return rows[keep], cols[keep]


def build_graph(family, q: int, n: int, k: int, caps: Caps | None = None, threads: int = 1) -> SubspaceGraph:
    """Materialize K_q(n,k) or J_q(n,k).

    Accepts any ``1 <= k <= n``; parameters outside ``n >= 2k >= 2`` set
    ``outside_regime`` and emit a warning.  The result does not depend
    on ``threads``.
    """
    family = Family.parse(family)
    caps = caps or Caps()
    if not 1 <= k <= n:
        raise InvalidParams(f"need 1 <= k <= n, got n={n}, k={k}")
    F = make_field(q)
    N = gaussian_binomial(n, k, q)
    if N > caps.max_vertices:
        raise LimitExceeded(f"{family.symbol}_{q}({n},{k}) has {N} vertices, cap is {caps.max_vertices}")
    if N * N > caps.max_edge_checks:
        raise LimitExceeded(f"{family.symbol}_{q}({n},{k}) needs {N * N} edge checks, cap is {caps.max_edge_checks}")
    outside = not (n >= 2 * k >= 2)
    if outside:
        warnings.warn(f"{family.symbol}_{q}({n},{k}) is outside n >= 2k >= 2", stacklevel=2)

    bases = enumerate_bases(n, k, F, cap=caps.max_vertices)
    points = PointIndex(n, F)
    inc = points.incidence(bases)
    target = 0 if family is Family.QKNESER else point_count(k - 1, q)
    dense_t = inc.T.toarray()

    blocks = [(lo, min(lo + _BLOCK_ROWS, N)) for lo in range(0, N, _BLOCK_ROWS)]
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        parts = list(pool.map(lambda b: _adjacency_block(inc, dense_t, b[0], b[1], target), blocks))
    rows = np.concatenate([p[0] for p in parts]) if parts else np.zeros(0, dtype=np.int64)
    cols = np.concatenate([p[1] for p in parts]) if parts else np.zeros(0, dtype=np.int64)
    # np.nonzero is row-major, so each row's neighbours are already ascending
    indptr = np.zeros(N + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=N), out=indptr[1:])
    idx_dtype = np.int32 if N < 2**31 else np.int64
    return SubspaceGraph(
        family=family, q=q, n=n, k=k, field=F, bases=bases, indptr=indptr,
        indices=cols.astype(idx_dtype), incidence=inc, points=points,
        outside_regime=outside,
    )


def neighbors(g: SubspaceGraph, v: int) -> np.ndarray:
    return g.neighbors(v)


@dataclass(frozen=True)
class DegreeReport:
    vertices: int
    min: int
    max: int
    is_regular: bool
    degree: int | None
    edge_count: int

    def as_dict(self) -> dict:
        return {"vertices": self.vertices, "min": self.min, "max": self.max,
                "is_regular": self.is_regular, "degree": self.degree, "edge_count": self.edge_count}


def degree_report(g: SubspaceGraph) -> DegreeReport:
    deg = g.degrees()
    lo = int(deg.min()) if deg.size else 0
    hi = int(deg.max()) if deg.size else 0
    return DegreeReport(vertices=g.num_vertices, min=lo, max=hi, is_regular=lo == hi,
                        degree=lo if lo == hi else None, edge_count=g.edge_count)


def partition_by_intersection(g: SubspaceGraph, u: Subspace) -> list[np.ndarray]:
    """Vertex ids grouped by ``dim(w ∩ u)`` for i = 0..k."""
    dims = g.intersection_dims(u)
    return [np.flatnonzero(dims == i) for i in range(g.k + 1)]


# -- edge-list export --------------------------------------------------------


def export_edge_list(g: SubspaceGraph, edges_path, vertices_path=None) -> tuple[Path, Path]:
    """Write ``# family q n k`` + ``u v`` lines, and an id -> canonical form
    JSON sidecar (default: ``<edges_path>.vertices.json``)."""
    edges_path = Path(edges_path)
    vertices_path = Path(vertices_path) if vertices_path else edges_path.with_name(edges_path.name + ".vertices.json")
    src = np.repeat(np.arange(g.num_vertices), g.degrees())
    keep = src < g.indices
    pairs = np.column_stack([src[keep], g.indices[keep]])
    with open(edges_path, "w") as fh:
        fh.write(f"# {g.family.value} {g.q} {g.n} {g.k}\n")
        np.savetxt(fh, pairs, fmt="%d")
    sidecar = {str(i): v.canonical() for i, v in enumerate(g.vertices)}
    vertices_path.write_text(json.dumps(sidecar, indent=0))
    return edges_path, vertices_path


def read_edge_list(edges_path) -> tuple[dict, np.ndarray, np.ndarray]:
    """Inverse of :func:`export_edge_list` for the adjacency: returns the
    header fields and CSR ``(indptr, indices)``."""
    with open(edges_path) as fh:
        header = fh.readline().lstrip("#").split()
        pairs = np.loadtxt(fh, dtype=np.int64, ndmin=2)
    fam, q, n, k = header[0], int(header[1]), int(header[2]), int(header[3])
    N = gaussian_binomial(n, k, q)
    if pairs.size == 0:
        pairs = pairs.reshape(0, 2)
    A = sp.coo_array((np.ones(2 * len(pairs), dtype=np.int8),
                      (np.concatenate([pairs[:, 0], pairs[:, 1]]), np.concatenate([pairs[:, 1], pairs[:, 0]]))),
                     shape=(N, N)).tocsr()
    A.sort_indices()
    return {"family": fam, "q": q, "n": n, "k": k}, A.indptr.astype(np.int64), A.indices.astype(np.int64)
