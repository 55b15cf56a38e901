"""Exact q-combinatorics over Python integers.

Everything here is integer arithmetic; no floats are involved anywhere.
``[n]!`` denotes the q-factorial ``prod_{i=1..n} (q^i - 1)`` and ``[n, k]``
the Gaussian binomial (the number of k-subspaces of F_q^n).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import InvalidParams
from .gfq import factor_prime_power


@dataclass(frozen=True)
class CountParams:
    """Parameters of a subspace count: ambient ``n``, fixed subspace
    dimension ``m``, subspace dimension ``k``, intersection dimensions
    ``i`` and ``j``, field order ``q``."""

    n: int
    m: int
    k: int
    i: int
    j: int = 0
    q: int = 2

    def __post_init__(self):
        factor_prime_power(self.q)
        if not (0 <= self.i <= self.k and 0 <= self.j <= self.k):
            raise InvalidParams(f"need 0 <= i, j <= k, got i={self.i} j={self.j} k={self.k}")
        if not 0 <= self.m <= self.n:
            raise InvalidParams(f"need 0 <= m <= n, got m={self.m} n={self.n}")


@dataclass(frozen=True)
class DijTerm:
    r: int
    y1: int
    y2: int
    y3: int

    @property
    def term(self) -> int:
        return self.y1 * self.y2 * self.y3


def q_factorial(n: int, q: int) -> int:
    if n < 0:
        raise InvalidParams("q-factorial needs n >= 0")
    out = 1
    for i in range(1, n + 1):
        out *= q**i - 1
    return out


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n.

    Zero when ``k > n`` or either argument is negative.  Computed as the
    running product of ``(q^{n-i} - 1) / (q^{i+1} - 1)``; each partial
    product is itself a Gaussian binomial, so every division is exact.
    """
    if k < 0 or n < 0 or k > n:
        return 0
    k = min(k, n - k)
    out = 1
    for i in range(k):
        num = out * (q ** (n - i) - 1)
        den = q ** (i + 1) - 1
        out, rem = divmod(num, den)
        assert rem == 0
    return out


def count_a(params: CountParams) -> int:
    """k-subspaces of F_q^n meeting a fixed m-subspace in dimension i."""
    n, m, k, i, q = params.n, params.m, params.k, params.i, params.q
    if k > n:
        return 0
    if (k - i) * (m - i) < 0:
        # then one of the binomials below vanishes anyway
        return 0
    return q ** ((k - i) * (m - i)) * gaussian_binomial(m, i, q) * gaussian_binomial(n - m, k - i, q)


def _dij_bounds(params: CountParams) -> tuple[int, int]:
    n, m, k, i, j = params.n, params.m, params.k, params.i, params.j
    lo = max(0, m + 2 * k - n - i - j)
    hi = min(m - i - j, k - i, k - j)
    return lo, hi


def _check_dij(params: CountParams) -> None:
    if params.i == params.j:
        raise InvalidParams("d_ij is only defined for i != j")
    if params.m > params.n - params.k:
        raise InvalidParams(f"d_ij needs m <= n - k, got m={params.m}, n-k={params.n - params.k}")


def dij_breakdown(params: CountParams) -> list[DijTerm]:
    """Per-r factors of the neighbour count d_ij.

    For a vertex x meeting the fixed subspace U (dim m) in dimension i, a
    neighbour y meeting U in dimension j is assembled as y1 + y2 + y3 with
    y1 a j-subspace of U avoiding x, y2 an r-subspace of U + x, and y3 an
    s-subspace (s = k - j - r) avoiding U + x.  ``y1`` is independent of r.
    Returns an empty list when the summation range is empty.
    """
    _check_dij(params)
    n, m, k, i, j, q = params.n, params.m, params.k, params.i, params.j, params.q
    lo, hi = _dij_bounds(params)
    if lo > hi:
        return []
    y1 = q ** (i * j) * gaussian_binomial(m - i, j, q)
    terms = []
    for r in range(lo, hi + 1):
        s = k - j - r
        # r(r-1+2i) is even, so the halved exponent is exact
        y2 = (
            q ** (r * (r - 1 + 2 * i) // 2)
            * gaussian_binomial(m - i - j, r, q)
            * gaussian_binomial(k - i, r, q)
            * q_factorial(r, q)
        )
        y3 = q ** (s * (s + m - i)) * gaussian_binomial(n - m - k + i, s, q)
        terms.append(DijTerm(r=r, y1=y1, y2=y2, y3=y3))
    return terms


def count_dij(params: CountParams) -> int:
    """Closed-form number of neighbours in class j of a class-i vertex."""
    return sum(t.term for t in dij_breakdown(params))


def count_case2_common(k: int, a: int, q: int) -> int:
    """Common neighbours in K_q(2k, k) of two vertices meeting in dim k - a."""
    if not 1 <= a <= k - 1:
        raise InvalidParams(f"need 1 <= a <= k-1, got a={a}, k={k}")
    return q ** (k * k - comb(a + 1, 2)) * q_factorial(a, q)


def kneser_degree(n: int, k: int, q: int) -> int:
    return q ** (k * k) * gaussian_binomial(n - k, k, q)


def kneser_edge_count(n: int, k: int, q: int) -> int:
    total = kneser_degree(n, k, q) * gaussian_binomial(n, k, q)
    assert total % 2 == 0
    return total // 2


@dataclass(frozen=True)
class DI0Report:
    n: int
    k: int
    q: int
    values: dict[int, int]

    @property
    def ok(self) -> bool:
        return all(v >= 2 for v in self.values.values())


def check_d_i0_bound(n: int, k: int, q: int) -> DI0Report:
    """Evaluate d_{i0} with m = k + 1 for i = 1..k."""
    if n < 2 * k + 1:
        raise InvalidParams(f"need n >= 2k+1, got n={n}, k={k}")
    values = {i: count_dij(CountParams(n=n, m=k + 1, k=k, i=i, j=0, q=q)) for i in range(1, k + 1)}
    return DI0Report(n=n, k=k, q=q, values=values)
