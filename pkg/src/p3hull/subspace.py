"""Subspaces of F_q^n in canonical reduced row echelon form.

A :class:`Subspace` is identified by its RREF basis, so two values compare
equal exactly when they span the same space.  Matrices are numpy arrays of
field-element indices; arithmetic goes through the tables of a
:class:`~p3hull.gfq.FieldSpec`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import AmbientMismatch, IndexOutOfRange, LimitExceeded
from .gfq import FieldSpec
from .qcomb import gaussian_binomial

DEFAULT_ENUMERATION_CAP = 2_000_000


# -- dense linear algebra over F_q -------------------------------------------


def row_reduce(mat, F: FieldSpec) -> tuple[np.ndarray, list[int]]:
    """Return ``(R, pivots)`` where R is the RREF of ``mat`` with zero rows
    removed and ``pivots`` lists the pivot column of each row."""
    A = np.array(mat, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        lead = A[r, c]
        if lead != 1:
            A[r] = F.mul[F.inv[lead], A[r]]
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if others.size:
            factors = F.neg[A[others, c]]
            A[others] = F.add[A[others], F.mul[factors[:, None], A[r][None, :]]]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(mat, F: FieldSpec) -> int:
    return len(row_reduce(mat, F)[1])


def solve_in_span(basis, vec, F: FieldSpec) -> np.ndarray | None:
    """Coefficients c with ``c @ basis == vec`` over F_q, or None.

    ``basis`` rows must be linearly independent.
    """
    B = np.asarray(basis, dtype=np.int64)
    v = np.asarray(vec, dtype=np.int64)
    k = B.shape[0]
    # reduce [B | I] and read the combination off the identity part
    aug = np.concatenate([B, np.eye(k, dtype=np.int64)], axis=1)
    R, piv = row_reduce(aug, F)
    n = B.shape[1]
    resid = v.copy()
    coeffs = np.zeros(k, dtype=np.int64)
    for row, c in zip(R, piv):
        if c >= n:
            break
        a = resid[c]
        if a:
            resid = F.add[resid, F.mul[F.neg[a], row[:n]]]
            coeffs = F.add[coeffs, F.mul[a, row[n:]]]
    if resid.any():
        return None
    return coeffs


def fq_matmul(A, B, F: FieldSpec) -> np.ndarray:
    """Matrix product over F_q of index arrays (..., m) @ (m, n)."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    out = np.zeros(A.shape[:-1] + (B.shape[1],), dtype=np.int64)
    for t in range(A.shape[-1]):
        out = F.add[out, F.mul[A[..., t, None], B[t]]]
    return out


# -- the subspace type -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F_q^n stored as its RREF basis (rows of element indices)."""

    field: FieldSpec
    n: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def ambient(self) -> int:
        return self.n

    @property
    def basis(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(len(self.rows), self.n)

    @property
    def pivot_cols(self) -> tuple[int, ...]:
        return tuple(next(c for c, x in enumerate(row) if x) for row in self.rows)

    def canonical(self) -> str:
        """Serialized form: rows of space separated indices joined by ';'."""
        return ";".join(" ".join(str(x) for x in row) for row in self.rows)

    @classmethod
    def from_canonical(cls, text: str, field: FieldSpec, n: int) -> "Subspace":
        text = text.strip()
        if not text:
            return zero_space(n, field)
        rows = [[int(x) for x in part.split()] for part in text.split(";")]
        if any(len(r) != n for r in rows):
            raise ValueError(f"every row must have {n} entries: {text!r}")
        sub = rref(rows, field, n=n)
        if sub.dim != len(rows):
            raise ValueError(f"rows are linearly dependent: {text!r}")
        return sub

    def _key(self):
        return (self.field.q, self.n, self.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Subspace(q={self.field.q}, n={self.n}, dim={self.dim}, [{self.canonical()}])"

    def pretty(self) -> str:
        """1-based vector names when the basis is made of unit vectors."""
        names = []
        for row in self.rows:
            terms = []
            for c, x in enumerate(row):
                if x:
                    terms.append(f"e{c + 1}" if x == 1 else f"{x}*e{c + 1}")
            names.append("+".join(terms))
        return "<" + ", ".join(names) + ">"


def rref(mat, field: FieldSpec, n: int | None = None) -> Subspace:
    """Canonical subspace spanned by the rows of ``mat`` (zero rows dropped)."""
    A = np.asarray(mat, dtype=np.int64)
    if A.size == 0:
        if n is None:
            n = A.shape[-1] if A.ndim == 2 else 0
        return zero_space(n, field)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    if n is not None and A.shape[1] != n:
        raise AmbientMismatch(f"rows have length {A.shape[1]}, expected {n}")
    if A.max() >= field.q or A.min() < 0:
        raise ValueError("matrix entries must be field-element indices")
    R, _ = row_reduce(A, field)
    return Subspace(field, A.shape[1], tuple(tuple(int(x) for x in row) for row in R))


def zero_space(n: int, field: FieldSpec) -> Subspace:
    return Subspace(field, n, ())


def _check_same(U: Subspace, W: Subspace) -> None:
    if U.n != W.n or U.field != W.field:
        raise AmbientMismatch(f"F_{U.field.q}^{U.n} vs F_{W.field.q}^{W.n}")


def _stack(U: Subspace, W: Subspace) -> np.ndarray:
    return np.concatenate([U.basis, W.basis], axis=0)


def intersection_dim(U: Subspace, W: Subspace) -> int:
    _check_same(U, W)
    if U.dim == 0 or W.dim == 0:
        return 0
    return U.dim + W.dim - rank(_stack(U, W), U.field)


def sum_span(U: Subspace, W: Subspace) -> Subspace:
    _check_same(U, W)
    return rref(_stack(U, W), U.field, n=U.n)


def intersection(U: Subspace, W: Subspace) -> Subspace:
    """U ∩ W by the Zassenhaus sum-intersection algorithm."""
    _check_same(U, W)
    if U.dim == 0 or W.dim == 0:
        return zero_space(U.n, U.field)
    n = U.n
    top = np.concatenate([U.basis, U.basis], axis=1)
    bottom = np.concatenate([W.basis, np.zeros_like(W.basis)], axis=1)
    R, piv = row_reduce(np.concatenate([top, bottom]), U.field)
    rows = [R[t, n:] for t, c in enumerate(piv) if c >= n]
    return rref(np.array(rows).reshape(len(rows), n), U.field, n=n)


def contains(U: Subspace, W: Subspace) -> bool:
    """True iff W ⊆ U."""
    _check_same(U, W)
    if W.dim == 0:
        return True
    return rank(_stack(U, W), U.field) == U.dim


def coordinate_subspace(n: int, indices, field: FieldSpec) -> Subspace:
    """Span of the unit vectors at the given 0-based positions."""
    idx = sorted(set(int(i) for i in indices))
    if any(i < 0 or i >= n for i in idx):
        raise IndexOutOfRange(f"coordinates {idx} not all in [0, {n})")
    rows = tuple(tuple(1 if c == i else 0 for c in range(n)) for i in idx)
    return Subspace(field, n, rows)


def span_of(vectors: Sequence[Sequence[int]], field: FieldSpec, n: int) -> Subspace:
    return rref(np.array(vectors, dtype=np.int64).reshape(len(vectors), n), field, n=n)


# -- enumeration --------------------------------------------------------------


def _schubert_cells(n: int, k: int, q: int) -> Iterator[np.ndarray]:
    """Yield, per pivot set in lexicographic order, the array (count, k, n)
    of all RREF matrices with those pivots, free entries in row-major
    lexicographic order."""
    for pivots in itertools.combinations(range(n), k):
        pivset = set(pivots)
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivset]
        count = q ** len(free)
        block = np.zeros((count, k, n), dtype=np.uint8)
        for r, p in enumerate(pivots):
            block[:, r, p] = 1
        if free:
            # digits of 0..count-1 in base q, most significant first
            codes = np.arange(count, dtype=np.int64)
            for t in range(len(free) - 1, -1, -1):
                r, c = free[t]
                block[:, r, c] = codes % q
                codes //= q
        yield block


def enumerate_bases(n: int, k: int, field: FieldSpec, cap: int = DEFAULT_ENUMERATION_CAP) -> np.ndarray:
    """All k-subspaces of F_q^n as an array (N, k, n) of RREF bases, in
    the stable vertex order."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    total = gaussian_binomial(n, k, field.q)
    if total > cap:
        raise LimitExceeded(f"[{n},{k}]_{field.q} = {total} subspaces exceeds the cap {cap}")
    out = np.concatenate(list(_schubert_cells(n, k, field.q)), axis=0)
    assert out.shape[0] == total
    return out


def enumerate_subspaces(n: int, k: int, field: FieldSpec, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Subspace]:
    """All k-subspaces of F_q^n, ordered by pivot set then free entries."""
    bases = enumerate_bases(n, k, field, cap)
    return [Subspace(field, n, tuple(map(tuple, b))) for b in bases.tolist()]
