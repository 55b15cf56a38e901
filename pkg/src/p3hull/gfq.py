"""Table-driven arithmetic in the finite field F_q.

An element of F_{p^e} is stored as an integer index ``sum(c_i * p**i)``
where ``c_0 + c_1 x + ... + c_{e-1} x^{e-1}`` is its residue modulo a fixed
monic irreducible polynomial.  Index 0 is zero and index 1 is one.

All tables are numpy arrays so that whole matrices of indices can be
combined with fancy indexing, e.g. ``F.add[a, F.mul[c, b]]``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import DivisionByZero, LimitExceeded, NotPrimePower

DEFAULT_TABLE_BOUND = 256


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"q={q} is not a prime power")
    p = next(d for d in itertools.count(2) if d * d > q or q % d == 0)
    if p * p > q:
        p = q
    e = 0
    r = q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotPrimePower(f"q={q} has at least two distinct prime factors")
    return p, e


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    # a, m constant-term first; m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
    while a and a[-1] == 0:
        a.pop()
    return a


def _monic_polys(p: int, d: int):
    for low in itertools.product(range(p), repeat=d):
        yield list(low) + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    e = len(poly) - 1
    if e < 1:
        return False
    for d in range(1, e // 2 + 1):
        for divisor in _monic_polys(p, d):
            if not _poly_mod(poly, divisor, p):
                return False
    return True


def find_irreducible(p: int, e: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree ``e`` over F_p.

    Coefficients are listed constant term first and candidates are compared
    in that order, so ``find_irreducible(2, 2) == [1, 1, 1]`` (x^2 + x + 1)
    and ``find_irreducible(p, 1) == [0, 1]`` (x).
    """
    if e < 1:
        raise ValueError("degree must be >= 1")
    for low in itertools.product(range(p), repeat=e):
        poly = list(low) + [1]
        if is_irreducible(poly, p):
            return poly
    raise AssertionError("an irreducible polynomial of every degree exists")


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The field of order ``q = p**e`` together with its operation tables."""

    p: int
    e: int
    modulus: tuple[int, ...]
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    neg: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def sub(self) -> np.ndarray:
        return self.add[:, self.neg]

    # aliases matching the names used in the docs
    @property
    def mul_table(self) -> np.ndarray:
        return self.mul

    @property
    def inv_table(self) -> np.ndarray:
        return self.inv

    def _key(self):
        return (self.p, self.e, self.modulus)

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def element(self, index: int) -> "FieldElement":
        if not 0 <= index < self.q:
            raise ValueError(f"index {index} out of range for F_{self.q}")
        return FieldElement(int(index))

    def elements(self):
        return [FieldElement(i) for i in range(self.q)]


@dataclass(frozen=True, order=True)
class FieldElement:
    index: int

    def __int__(self):
        return self.index

    def __index__(self):
        return self.index


def _build_tables(p: int, e: int, modulus: list[int]):
    q = p**e
    weights = p ** np.arange(e, dtype=np.int64)
    coeffs = (np.arange(q)[:, None] // weights[None, :]) % p  # (q, e)

    add = ((coeffs[:, None, :] + coeffs[None, :, :]) % p) @ weights
    neg = ((-coeffs) % p) @ weights

    # xpow[a, i] = coefficients of a * x^i reduced mod the modulus
    xpow = np.zeros((q, e, e), dtype=np.int64)
    cur = coeffs.copy()
    low = np.array(modulus[:e], dtype=np.int64)
    for i in range(e):
        xpow[:, i, :] = cur
        top = cur[:, e - 1].copy()
        cur = np.roll(cur, 1, axis=1)
        cur[:, 0] = 0
        cur = (cur - top[:, None] * low[None, :]) % p
    mul_coeffs = np.einsum("bi,aij->abj", coeffs, xpow) % p
    mul = mul_coeffs @ weights

    inv = np.zeros(q, dtype=np.int64)
    one_at = np.argwhere(mul == 1)
    inv[one_at[:, 0]] = one_at[:, 1]

    small = np.uint8 if q <= 256 else np.int64
    return (add.astype(small), mul.astype(small), neg.astype(small), inv.astype(small))


@functools.lru_cache(maxsize=None)
def _make_field_cached(q: int) -> FieldSpec:
    p, e = factor_prime_power(q)
    modulus = find_irreducible(p, e)
    add, mul, neg, inv = _build_tables(p, e, modulus)
    for table in (add, mul, neg, inv):
        table.setflags(write=False)
    return FieldSpec(p=p, e=e, modulus=tuple(modulus), add=add, mul=mul, neg=neg, inv=inv)


def make_field(q: int, table_bound: int = DEFAULT_TABLE_BOUND) -> FieldSpec:
    """Field of order ``q``.  Deterministic: repeated calls agree exactly."""
    q = int(q)
    factor_prime_power(q)
    if q > table_bound:
        raise LimitExceeded(f"q={q} exceeds the field table bound {table_bound}")
    return _make_field_cached(q)


def field_arith(spec: FieldSpec, op: str, a, b=None) -> FieldElement:
    """Apply one of ``add, sub, mul, neg, inv`` to element indices."""
    a = int(a)
    if not 0 <= a < spec.q:
        raise ValueError(f"element {a} out of range")
    if op in ("add", "sub", "mul"):
        if b is None:
            raise ValueError(f"{op} needs two operands")
        b = int(b)
        if not 0 <= b < spec.q:
            raise ValueError(f"element {b} out of range")
        if op == "add":
            return FieldElement(int(spec.add[a, b]))
        if op == "sub":
            return FieldElement(int(spec.add[a, spec.neg[b]]))
        return FieldElement(int(spec.mul[a, b]))
    if op == "neg":
        return FieldElement(int(spec.neg[a]))
    if op == "inv":
        if a == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        return FieldElement(int(spec.inv[a]))
    raise ValueError(f"unknown operation {op!r}")
